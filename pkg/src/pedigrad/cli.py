"""Command-line front end.

Exit codes: 0 success, 1 validation error (the message names the violated
invariant), 2 parse error (the message carries a location when known).
Anywhere a file path is accepted, ``inline:CONTENT`` supplies the content
directly, which keeps golden tests self-contained.  All output is plain
text and byte-deterministic for identical inputs.
"""
from __future__ import annotations

import argparse
import sys
from pathlib import Path
from typing import Optional, Sequence

from .boolmod import ConeImage, parse_sum, pi, print_sum, WordUniverse
from .chromology import ChromologyDoc, classify_cone, parse_chromology
from .errors import ParseError, ValidationError
from .linkage import format_mapfun_tsv, mapfun_table
from .preorder import BOOL
from .recomb import (
    RecombContext,
    apply_mutation_rules,
    check_scheme,
    equivalent,
    parse_mutation_rules,
    parse_relations,
    saturate,
)
from .segment import (
    Segment,
    invert_segment,
    parse_index_list,
    parse_segment,
    print_segment,
    truncate,
    validate_morphism,
)
from .words import (
    crispr_edit,
    map_word,
    print_word,
    reverse_word,
    transcribe,
    word_from_literal,
)


def read_input(arg: str) -> str:
    if arg.startswith("inline:"):
        return arg[len("inline:"):]
    return Path(arg).read_text()


def _blackline(n: int, parts: Sequence[int]) -> Segment:
    """All-black segment with the given fiber sizes (must sum to n)."""
    return Segment(BOOL, tuple(parts), ("1",) * len(parts))


def _parse_window(text: str) -> tuple[int, int]:
    lo, sep, hi = text.partition("..")
    if not sep:
        raise ParseError(f"window must look like I..J, got {text!r}")
    try:
        return int(lo), int(hi)
    except ValueError:
        raise ParseError(f"window bounds must be integers, got {text!r}")


# ---------------------------------------------------------------------------
# Subcommand handlers
# ---------------------------------------------------------------------------

def _cmd_seg_check(args) -> int:
    seg = parse_segment(args.segment, BOOL)
    print(print_segment(seg))
    return 0


def _cmd_seg_tr(args) -> int:
    seg = parse_segment(args.segment, BOOL)
    positions = truncate(seg, args.b)
    print("{" + ",".join(map(str, positions)) + "}")
    return 0


def _cmd_chrom_check(args) -> int:
    doc = parse_chromology(read_input(args.file))
    for cone in doc.chromology.cones:
        label = classify_cone(cone, args.b)
        print(f"{cone.name}: {label.value}")
    return 0


def _cmd_word_map(args) -> int:
    dom = parse_segment(getattr(args, "from"), BOOL)
    cod = parse_segment(args.to, BOOL)
    m = validate_morphism(dom, cod, parse_index_list(args.f1))
    w = word_from_literal(args.word, dom, b=args.b)
    print(print_word(map_word(m, w)))
    return 0


def _context_from_args(args) -> tuple[ChromologyDoc, RecombContext]:
    doc = parse_chromology(read_input(args.chrom))
    tau = parse_segment(args.tau, doc.chromology.omega)
    relations = ()
    if getattr(args, "rels", None):
        universe = WordUniverse(tau, doc.alphabet, args.b)
        relations = parse_relations(read_input(args.rels), universe)
    ctx = RecombContext(doc.chromology, doc.alphabet, args.b, tau, relations)
    return doc, ctx


def _cmd_recomb_pi(args) -> int:
    doc, ctx = _context_from_args(args)
    matching = [c for c in doc.chromology.cones if c.peak == ctx.tau]
    if not matching:
        raise ValidationError("no cone in the chromology has tau as its peak")
    if len(matching) > 1:
        raise ValidationError(
            "several cones share tau as their peak; pi needs a unique one")
    ci = ConeImage(matching[0], doc.alphabet, args.b)
    x = parse_sum(args.sum, ctx.tau_universe)
    components = pi(ci, x)
    print("(" + ", ".join(print_sum(c) for c in components) + ")")
    return 0


def _cmd_recomb_saturate(args) -> int:
    _, ctx = _context_from_args(args)
    x = parse_sum(args.sum, ctx.tau_universe)
    print(print_sum(saturate(ctx, x)))
    return 0


def _cmd_recomb_equiv(args) -> int:
    _, ctx = _context_from_args(args)
    x = parse_sum(args.sum, ctx.tau_universe)
    y = parse_sum(args.sum2, ctx.tau_universe)
    print("EQUIVALENT" if equivalent(ctx, x, y) else "NOT EQUIVALENT")
    return 0


def _cmd_scheme_check(args) -> int:
    doc = parse_chromology(read_input(args.chrom))
    report = check_scheme(doc.chromology, doc.alphabet, args.b)
    print("PASS" if report.passed else "FAIL")
    for failure in report.failures:
        print(failure)
    return 0


def _cmd_mapfun(args) -> int:
    if args.steps < 1:
        raise ValidationError("steps must be >= 1")
    xs = [args.xmax * i / args.steps for i in range(args.steps + 1)]
    sys.stdout.write(format_mapfun_tsv(mapfun_table(args.n, xs)))
    return 0


def _cmd_edit_crispr(args) -> int:
    n = len(args.target)
    lo, hi = _parse_window(args.window)
    if not (1 <= lo <= hi <= n):
        raise ValidationError(f"window {lo}..{hi} out of range [1..{n}]")
    parts = [s for s in (lo - 1, hi - lo + 1, n - hi) if s]
    seg = _blackline(n, parts)
    target = word_from_literal(args.target, seg)
    patch_seg = Segment(BOOL, seg.fiber_sizes, tuple(
        "1" if lo <= seg.fiber_positions(j)[0] <= hi else "0"
        for j in range(1, seg.n0 + 1)))
    patch = word_from_literal(args.patch, patch_seg)
    print(print_word(crispr_edit(target, patch, (lo, hi))))
    return 0


def _cmd_mutate(args) -> int:
    rules = parse_mutation_rules(read_input(args.rules))
    body = args.sum.strip()
    width = 0 if body == "0" else len(body.split("+")[0].strip())
    universe = WordUniverse(_blackline(width, [width] if width else []))
    x = parse_sum(args.sum, universe)
    print(print_sum(apply_mutation_rules(rules, x)))
    return 0


def _cmd_transcribe(args) -> int:
    seg = _blackline(len(args.word), [len(args.word)] if args.word else [])
    print(print_word(transcribe(word_from_literal(args.word, seg))))
    return 0


def _cmd_invert(args) -> int:
    seg = parse_segment(args.segment, BOOL)
    print(print_segment(invert_segment(seg)))
    if args.word is not None:
        w = word_from_literal(args.word, seg)
        print(print_word(reverse_word(w)))
    return 0


# ---------------------------------------------------------------------------
# Parser wiring
# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="pedigrad",
        description="Segments, chromologies, words, and recombination "
                    "congruences on the command line.")
    sub = parser.add_subparsers(dest="command", required=True)

    seg = sub.add_parser("seg", help="segment utilities")
    seg_sub = seg.add_subparsers(dest="subcommand", required=True)
    p = seg_sub.add_parser("check", help="parse and echo a segment")
    p.add_argument("--segment", required=True)
    p.set_defaults(func=_cmd_seg_check)
    p = seg_sub.add_parser("tr", help="print a truncation set")
    p.add_argument("--b", required=True)
    p.add_argument("--segment", required=True)
    p.set_defaults(func=_cmd_seg_tr)

    chrom = sub.add_parser("chrom", help="chromology utilities")
    chrom_sub = chrom.add_subparsers(dest="subcommand", required=True)
    p = chrom_sub.add_parser("check", help="classify every cone")
    p.add_argument("file")
    p.add_argument("--b", required=True)
    p.set_defaults(func=_cmd_chrom_check)

    word = sub.add_parser("word", help="word utilities")
    word_sub = word.add_subparsers(dest="subcommand", required=True)
    p = word_sub.add_parser("map", help="apply a segment morphism to a word")
    p.add_argument("--from", required=True)
    p.add_argument("--to", required=True)
    p.add_argument("--f1", required=True)
    p.add_argument("--word", required=True)
    p.add_argument("--b", default="1")
    p.set_defaults(func=_cmd_word_map)

    recomb = sub.add_parser("recomb", help="recombination congruences")
    recomb_sub = recomb.add_subparsers(dest="subcommand", required=True)
    for name, func, needs_sum2 in (("pi", _cmd_recomb_pi, False),
                                   ("saturate", _cmd_recomb_saturate, False),
                                   ("equiv", _cmd_recomb_equiv, True)):
        p = recomb_sub.add_parser(name)
        p.add_argument("--chrom", required=True)
        p.add_argument("--tau", required=True)
        p.add_argument("--sum", required=True)
        if needs_sum2:
            p.add_argument("--sum2", required=True)
        p.add_argument("--rels")
        p.add_argument("--b", default="1")
        p.set_defaults(func=func)

    scheme = sub.add_parser("scheme", help="recombination scheme checks")
    scheme_sub = scheme.add_subparsers(dest="subcommand", required=True)
    p = scheme_sub.add_parser("check")
    p.add_argument("--chrom", required=True)
    p.add_argument("--b", default="1")
    p.set_defaults(func=_cmd_scheme_check)

    p = sub.add_parser("mapfun", help="mapping-function table (TSV)")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--xmax", type=float, required=True)
    p.add_argument("--steps", type=int, required=True)
    p.set_defaults(func=_cmd_mapfun)

    edit = sub.add_parser("edit", help="editing pipelines")
    edit_sub = edit.add_subparsers(dest="subcommand", required=True)
    p = edit_sub.add_parser("crispr")
    p.add_argument("--target", required=True)
    p.add_argument("--patch", required=True)
    p.add_argument("--window", required=True)
    p.set_defaults(func=_cmd_edit_crispr)

    p = sub.add_parser("mutate", help="apply mutation rules to a sum")
    p.add_argument("--rules", required=True)
    p.add_argument("--sum", required=True)
    p.set_defaults(func=_cmd_mutate)

    p = sub.add_parser("transcribe", help="DNA -> RNA transcription")
    p.add_argument("--word", required=True)
    p.set_defaults(func=_cmd_transcribe)

    p = sub.add_parser("invert", help="invert a segment (and word)")
    p.add_argument("--segment", required=True)
    p.add_argument("--word")
    p.set_defaults(func=_cmd_invert)

    return parser


def run(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return 2
    except ValidationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def main() -> None:
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
