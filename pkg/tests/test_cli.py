import subprocess
import sys

import pytest

from pedigrad.cli import run

HAPLO = """\
preorder bool
alphabet A C G T ; basepoint -

cone partition
peak: (bbb)(ww)(bbbb)(bbbbb)(www)(w)
leg: (www)(ww)(bbbb)(wwwww)(www)(w)
leg: (www)(ww)(wwww)(bbbbb)(www)(w)
leg: (bbb)(ww)(wwww)(wwwww)(www)(w)
end
"""

TAU = "(bbb)(ww)(bbbb)(bbbbb)(www)(w)"
PAIR_SUM = "TAGACGACG-TT + -CAGGTACCTAT"
SWAPPED_SUM = "TAGACGACCTAT + -CAGGTACG-TT"
SATURATED = ("-CAACGACCTAT + -CAACGACG-TT + -CAGGTACCTAT + -CAGGTACG-TT"
             " + TAGACGACCTAT + TAGACGACG-TT + TAGGGTACCTAT + TAGGGTACG-TT")

CROSSING = """\
preorder bool
alphabet A C G T ; basepoint -
cone front
peak: (b)(b)(b)
leg: (b)(b)(w)
leg: (w)(w)(b)
end
cone back
peak: (b)(b)(b)
leg: (b)(w)(w)
leg: (w)(b)(b)
end
"""


def invoke(capsys, *argv):
    code = run(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


# ---------------------------------------------------------------------------
# seg
# ---------------------------------------------------------------------------

def test_seg_check_echoes_canonical(capsys):
    code, out, err = invoke(capsys, "seg", "check", "--segment", "(3:1)(2:0)")
    assert (code, out, err) == (0, "(bbb)(ww)\n", "")


def test_seg_check_parse_error(capsys):
    code, out, err = invoke(capsys, "seg", "check", "--segment", "(bb")
    assert code == 2
    assert out == ""
    assert err.startswith("parse error: ")


def test_seg_tr(capsys):
    code, out, _ = invoke(capsys, "seg", "tr", "--b", "1", "--segment",
                          "(bbb)(ww)(bbbb)(wwwww)(bbb)")
    assert (code, out) == (0, "{1,2,3,6,7,8,9,15,16,17}\n")


def test_seg_tr_bottom_color_is_everything(capsys):
    code, out, _ = invoke(capsys, "seg", "tr", "--b", "0", "--segment",
                          "(b)(w)(b)")
    assert (code, out) == (0, "{1,2,3}\n")


# ---------------------------------------------------------------------------
# chrom / scheme
# ---------------------------------------------------------------------------

def test_chrom_check_inline(capsys):
    code, out, _ = invoke(capsys, "chrom", "check", "inline:" + HAPLO,
                          "--b", "1")
    assert (code, out) == (0, "partition: EXACTLY_DISTRIBUTIVE\n")


def test_chrom_check_from_file(tmp_path, capsys):
    path = tmp_path / "haplo.chrom"
    path.write_text(HAPLO)
    code, out, _ = invoke(capsys, "chrom", "check", str(path), "--b", "1")
    assert (code, out) == (0, "partition: EXACTLY_DISTRIBUTIVE\n")


def test_chrom_check_missing_file(capsys):
    code, out, err = invoke(capsys, "chrom", "check", "/no/such/file",
                            "--b", "1")
    assert code == 1
    assert err.startswith("error: ")


def test_chrom_check_reports_line_numbers(capsys):
    bad = "preorder bool\ncone x\nleg: (b)\n"
    code, _, err = invoke(capsys, "chrom", "check", "inline:" + bad,
                          "--b", "1")
    assert code == 2
    assert "line 3" in err


def test_scheme_check_pass(capsys):
    code, out, _ = invoke(capsys, "scheme", "check", "--chrom",
                          "inline:" + HAPLO)
    assert (code, out) == (0, "PASS\n")


def test_scheme_check_fail_lists_failures(capsys):
    code, out, _ = invoke(capsys, "scheme", "check", "--chrom",
                          "inline:" + CROSSING)
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "FAIL"
    assert len(lines) > 1


# ---------------------------------------------------------------------------
# word map
# ---------------------------------------------------------------------------

def test_word_map_alignment_row(capsys):
    code, out, _ = invoke(
        capsys, "word", "map",
        "--from", "(bbb)(ww)(bbbb)(bb)",
        "--to", "(bbbbb)(www)(bbbb)(b)(ww)",
        "--f1", "[1,2,3,6,7,9,10,11,12,14,15]",
        "--word", "AG-TCAAGC")
    assert (code, out) == (0, "AG---TCAA-\n")


def test_word_map_rejects_bad_morphism(capsys):
    code, _, err = invoke(
        capsys, "word", "map",
        "--from", "(bb)", "--to", "(b)(b)",
        "--f1", "[1,2]", "--word", "AG")
    assert code == 1
    assert "error: " in err


# ---------------------------------------------------------------------------
# recomb
# ---------------------------------------------------------------------------

def test_recomb_pi(capsys):
    code, out, _ = invoke(capsys, "recomb", "pi",
                          "--chrom", "inline:" + HAPLO,
                          "--tau", TAU, "--sum", PAIR_SUM)
    assert (code, out) == (0, "(ACGA + GGTA, CCTAT + CG-TT, -CA + TAG)\n")


def test_recomb_pi_needs_peak_cone(capsys):
    code, _, err = invoke(capsys, "recomb", "pi",
                          "--chrom", "inline:" + HAPLO,
                          "--tau", "(bbb)", "--sum", "AAA")
    assert code == 1
    assert "no cone" in err


def test_recomb_saturate(capsys):
    code, out, _ = invoke(capsys, "recomb", "saturate",
                          "--chrom", "inline:" + HAPLO,
                          "--tau", TAU, "--sum", PAIR_SUM)
    assert (code, out) == (0, SATURATED + "\n")


def test_recomb_equiv(capsys):
    code, out, _ = invoke(capsys, "recomb", "equiv",
                          "--chrom", "inline:" + HAPLO,
                          "--tau", TAU, "--sum", PAIR_SUM,
                          "--sum2", SWAPPED_SUM)
    assert (code, out) == (0, "EQUIVALENT\n")


def test_recomb_equiv_negative_still_exits_zero(capsys):
    code, out, _ = invoke(capsys, "recomb", "equiv",
                          "--chrom", "inline:" + HAPLO,
                          "--tau", TAU, "--sum", PAIR_SUM,
                          "--sum2", "TAGACGACG-TT")
    assert (code, out) == (0, "NOT EQUIVALENT\n")


def test_recomb_saturate_with_relations(capsys):
    # a nullomer relation AAA == 0 makes AAA freely absorbable, so the
    # class maximum of CCC picks it up
    chrom = "preorder bool\nalphabet A C G T ; basepoint -\n"
    rels = "rel: AAA == 0\n"
    code, out, _ = invoke(capsys, "recomb", "saturate",
                          "--chrom", "inline:" + chrom,
                          "--tau", "(bbb)",
                          "--rels", "inline:" + rels,
                          "--sum", "CCC")
    assert (code, out) == (0, "AAA + CCC\n")
    code, out, _ = invoke(capsys, "recomb", "equiv",
                          "--chrom", "inline:" + chrom,
                          "--tau", "(bbb)",
                          "--rels", "inline:" + rels,
                          "--sum", "CCC", "--sum2", "AAA + CCC")
    assert (code, out) == (0, "EQUIVALENT\n")


def test_recomb_rejects_inexact_cone(capsys):
    bad = ("preorder bool\n"
           "cone gap\n"
           "peak: (b)(b)\n"
           "leg: (b)(w)\n"
           "end\n")
    code, _, err = invoke(capsys, "recomb", "saturate",
                          "--chrom", "inline:" + bad,
                          "--tau", "(b)(b)", "--sum", "AA")
    assert code == 1
    assert "not exactly" in err


# ---------------------------------------------------------------------------
# mapfun
# ---------------------------------------------------------------------------

def test_mapfun_table(capsys):
    code, out, _ = invoke(capsys, "mapfun", "--n", "1000",
                          "--xmax", "1.0", "--steps", "4")
    lines = out.splitlines()
    assert code == 0
    assert lines[0] == "x\texact\tpoisson"
    assert lines[1] == "0\t0\t0"
    assert lines[2] == "0.25\t0.1967725885799525\t0.19673467014368329"
    assert lines[-1].startswith("1\t")
    assert len(lines) == 6


def test_mapfun_rejects_zero_steps(capsys):
    code, _, err = invoke(capsys, "mapfun", "--n", "10",
                          "--xmax", "1.0", "--steps", "0")
    assert code == 1
    assert "steps" in err


# ---------------------------------------------------------------------------
# edit / mutate / transcribe / invert
# ---------------------------------------------------------------------------

def test_edit_crispr(capsys):
    code, out, _ = invoke(capsys, "edit", "crispr", "--target", "ATCGTC",
                          "--patch", "TTC", "--window", "3..5")
    assert (code, out) == (0, "ATTTCC\n")


def test_edit_crispr_bad_window_syntax(capsys):
    code, _, err = invoke(capsys, "edit", "crispr", "--target", "ATCGTC",
                          "--patch", "TTC", "--window", "3-5")
    assert code == 2
    assert "I..J" in err


def test_edit_crispr_window_out_of_range(capsys):
    code, _, err = invoke(capsys, "edit", "crispr", "--target", "ATCGTC",
                          "--patch", "TTC", "--window", "5..9")
    assert code == 1
    assert "out of range" in err


def test_mutate(capsys):
    rules = "A -> A+G\nC -> C\nG -> G\nT -> T\n"
    code, out, _ = invoke(capsys, "mutate", "--rules", "inline:" + rules,
                          "--sum", "AC")
    assert (code, out) == (0, "AC + GC\n")


def test_mutate_zero_sum(capsys):
    rules = "A -> A\nC -> C\nG -> G\nT -> T\n"
    code, out, _ = invoke(capsys, "mutate", "--rules", "inline:" + rules,
                          "--sum", "0")
    assert (code, out) == (0, "0\n")


def test_transcribe(capsys):
    code, out, _ = invoke(capsys, "transcribe", "--word", "TGTAGTAGC")
    assert (code, out) == (0, "ACAUCAUCG\n")


def test_invert_segment_only(capsys):
    code, out, _ = invoke(capsys, "invert", "--segment",
                          "(bb)(w)(bbb)(b)(w)(w)")
    assert (code, out) == (0, "(w)(w)(b)(bbb)(w)(bb)\n")


def test_invert_with_word(capsys):
    code, out, _ = invoke(capsys, "invert", "--segment",
                          "(bb)(w)(bbb)(b)(w)(w)", "--word", "AACGTT")
    assert (code, out) == (0, "(w)(w)(b)(bbb)(w)(bb)\nTTGCAA\n")


# ---------------------------------------------------------------------------
# plumbing
# ---------------------------------------------------------------------------

def test_unknown_subcommand_exits_two(capsys):
    code, _, err = invoke(capsys, "frobnicate")
    assert code == 2
    assert err


def test_inline_content_is_verbatim(capsys):
    # nothing after the prefix is rewritten, including separators
    code, _, err = invoke(capsys, "chrom", "check",
                          "inline:preorder bool\ncone x\npeak: (b)\nleg: (b)\n",
                          "--b", "1")
    assert code == 2
    assert "end" in err


def test_output_is_deterministic(capsys):
    first = invoke(capsys, "recomb", "saturate", "--chrom", "inline:" + HAPLO,
                   "--tau", TAU, "--sum", PAIR_SUM)
    second = invoke(capsys, "recomb", "saturate", "--chrom", "inline:" + HAPLO,
                    "--tau", TAU, "--sum", PAIR_SUM)
    assert first == second


def test_console_script_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "pedigrad.cli", "seg", "check",
         "--segment", "(bb)(w)"],
        capture_output=True, text=True)
    assert proc.returncode == 0
    assert proc.stdout == "(bb)(w)\n"
