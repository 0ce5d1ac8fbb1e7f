import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from pedigrad import (
    BOOL,
    BoolSum,
    ConeImage,
    DNA,
    ParseError,
    UniverseTooLarge,
    ValidationError,
    WordUniverse,
    add,
    beta,
    bottom,
    congruence_class,
    congruent_single,
    leq_support,
    make_cone,
    make_sum,
    parse_segment,
    parse_sum,
    pi,
    print_sum,
    word_from_literal,
    zero,
)
from tests.conftest import E2, pair_cone

U2 = WordUniverse(parse_segment("(bb)"))


def sums_on(universe):
    words = sorted(universe.all_letter_tuples())
    return st.sets(st.sampled_from(words)).map(
        lambda s: BoolSum(universe, frozenset(s)))


# ---------------------------------------------------------------------------
# Carrier and sums
# ---------------------------------------------------------------------------

def test_universe_membership():
    assert U2.size() == 25
    assert U2.width == 2
    w = U2.word(("A", "G"))
    assert w.letters == ("A", "G")
    with pytest.raises(ValidationError):
        U2.check_member(("A", "G", "T"))
    with pytest.raises(ValidationError):
        U2.check_member(("A", "Z"))


def test_make_sum_coercions():
    w = word_from_literal("AG", parse_segment("(bb)"))
    s = make_sum(U2, [w, "CG"])
    assert print_sum(s) == "AG + CG"
    with pytest.raises(ValidationError):
        make_sum(U2, [word_from_literal("A", parse_segment("(b)"))])


def test_literal_example():
    s = add(parse_sum("AG + CG", U2), parse_sum("TA + CG", U2))
    assert print_sum(s) == "AG + CG + TA"


def test_leq_examples():
    assert leq_support(parse_sum("AG + CA", U2), parse_sum("AG + CG + CA", U2))
    assert not leq_support(parse_sum("AG + TT", U2), parse_sum("AG + CA", U2))


def test_zero_prints_and_parses():
    assert print_sum(zero(U2)) == "0"
    assert parse_sum("0", U2).is_zero


def test_parse_sum_errors():
    with pytest.raises(ParseError):
        parse_sum("", U2)
    with pytest.raises(ParseError):
        parse_sum("AG + ", U2)
    with pytest.raises(ParseError):
        parse_sum("AG + ZZ", U2)


def test_add_requires_shared_carrier():
    other = WordUniverse(parse_segment("(b)(b)"))
    with pytest.raises(ValidationError):
        add(parse_sum("AG", U2), parse_sum("AG", other))


@given(sums_on(WordUniverse(parse_segment("(bb)"), E2)),
       sums_on(WordUniverse(parse_segment("(bb)"), E2)),
       sums_on(WordUniverse(parse_segment("(bb)"), E2)))
def test_semimodule_laws(x, y, z):
    assert add(x, y) == add(y, x)
    assert add(add(x, y), z) == add(x, add(y, z))
    assert add(x, x) == x
    assert add(x, zero(x.universe)) == x
    # order agrees with addition
    assert leq_support(x, add(x, y))
    assert leq_support(x, y) == (add(x, y) == y)


# ---------------------------------------------------------------------------
# Cone images: pi and beta
# ---------------------------------------------------------------------------

def test_leg_index_tables(homologous_exact):
    ci = ConeImage(homologous_exact)
    assert ci.leg_index_table(1) == (3, 4, 5, 6)
    assert ci.leg_index_table(2) == (7, 8, 9, 10, 11)
    assert ci.leg_index_table(3) == (0, 1, 2)


def test_pi_beta_worked_example(homologous_exact):
    ci = ConeImage(homologous_exact)
    x = parse_sum("TAGACGACG-TT + -CAGGTACCTAT", ci.peak_universe)
    comps = pi(ci, x)
    flat = tuple(frozenset("".join(w) for w in t.support) for t in comps)
    assert flat == (frozenset({"ACGA", "GGTA"}),
                    frozenset({"CG-TT", "CCTAT"}),
                    frozenset({"TAG", "-CA"}))
    sat = beta(ci, comps)
    assert sorted("".join(w) for w in sat.support) == sorted([
        "TAGACGACG-TT", "-CAACGACG-TT", "TAGACGACCTAT", "-CAACGACCTAT",
        "TAGGGTACG-TT", "-CAGGTACG-TT", "TAGGGTACCTAT", "-CAGGTACCTAT"])


def test_beta_zero_component_annihilates(homologous_exact):
    ci = ConeImage(homologous_exact)
    x = parse_sum("TAGACGACG-TT", ci.peak_universe)
    comps = pi(ci, x)
    broken = (comps[0], zero(ci.leg_universe(2)), comps[2])
    assert beta(ci, broken).is_zero


def test_pi_of_zero_is_all_zero(homologous_exact):
    ci = ConeImage(homologous_exact)
    for t in pi(ci, zero(ci.peak_universe)):
        assert t.is_zero


def test_pi_requires_peak_carrier(homologous_exact):
    ci = ConeImage(homologous_exact)
    with pytest.raises(ValidationError):
        pi(ci, parse_sum("AG", U2))


def test_beta_requires_cartesian_cone():
    peak = parse_segment("(b)(b)")
    c = make_cone("overlap", peak, [parse_segment("(b)(b)"),
                                    parse_segment("(b)(w)")])
    ci = ConeImage(c)
    with pytest.raises(ValidationError) as ei:
        beta(ci, pi(ci, parse_sum("AG", ci.peak_universe)))
    assert "Cartesian" in str(ei.value)


def test_cone_image_rejects_diagram_arrows():
    peak = parse_segment("(b)(b)")
    c = make_cone("arrowed", peak, [parse_segment("(b)(w)"),
                                    parse_segment("(w)(w)")], arrows=[(1, 2)])
    with pytest.raises(ValidationError) as ei:
        ConeImage(c)
    assert "wide span" in str(ei.value)


def test_bottom_zero_propagation():
    ag = parse_sum("AG", U2)
    ta = parse_sum("TA", U2)
    z = zero(U2)
    assert bottom((ag, z, ta)) == (z, z, z)
    assert bottom((ag, ta)) == (ag, ta)
    assert bottom(()) == ()


def test_bottom_fixes_pi(homologous_exact):
    ci = ConeImage(homologous_exact)
    for literal in ["TAGACGACG-TT", "TAGACGACG-TT + -CAGGTACCTAT", "0"]:
        comps = pi(ci, parse_sum(literal, ci.peak_universe))
        assert bottom(comps) == comps


# ---------------------------------------------------------------------------
# Closure behavior of beta∘pi
# ---------------------------------------------------------------------------

def small_ci():
    return ConeImage(pair_cone(), E2)


@given(st.data())
@settings(max_examples=80, deadline=None)
def test_round_trip_pi_beta_pi(data):
    ci = small_ci()
    x = data.draw(sums_on(ci.peak_universe))
    comps = pi(ci, x)
    assert pi(ci, beta(ci, comps)) == comps


@given(st.data())
@settings(max_examples=80, deadline=None)
def test_closure_laws(data):
    ci = small_ci()
    x = data.draw(sums_on(ci.peak_universe))
    y = data.draw(sums_on(ci.peak_universe))
    cx = beta(ci, pi(ci, x))
    assert leq_support(x, cx)                       # extensive
    assert beta(ci, pi(ci, cx)) == cx               # idempotent
    if leq_support(x, y):                           # monotone
        assert leq_support(cx, beta(ci, pi(ci, y)))


def test_maximum_by_brute_force():
    # on a fully enumerable universe, beta(pi(x)) is the largest sum with
    # the same projections as x
    ci = small_ci()
    words = sorted(ci.peak_universe.all_letter_tuples())
    assert len(words) == 4
    for bits in range(1, 1 << len(words)):
        support = frozenset(w for i, w in enumerate(words) if bits >> i & 1)
        x = BoolSum(ci.peak_universe, support)
        mx = beta(ci, pi(ci, x))
        same = [BoolSum(ci.peak_universe, frozenset(s))
                for r in range(1, len(words) + 1)
                for s in itertools.combinations(words, r)]
        same = [y for y in same if pi(ci, y) == pi(ci, x)]
        assert all(leq_support(y, mx) for y in same)
        assert mx in same


def test_congruent_single_absorption(homologous_exact):
    ci = ConeImage(homologous_exact)
    x = parse_sum("TAGACGACG-TT + -CAGGTACCTAT", ci.peak_universe)
    y = parse_sum("TAGGGTACG-TT", ci.peak_universe)
    assert congruent_single(ci, x, add(x, y))
    assert not congruent_single(ci, x, y)


def test_congruence_class_enumeration():
    ci = small_ci()
    x = make_sum(ci.peak_universe, ["A-", "-A"])
    cls = list(congruence_class(ci, x))
    mx = beta(ci, pi(ci, x))
    assert mx in cls
    assert all(pi(ci, y) == pi(ci, x) for y in cls)
    # every class member sits under the maximum
    assert all(leq_support(y, mx) for y in cls)
    # and the enumeration is exactly the pi-fiber within the down-set
    assert len(cls) == len({y.support for y in cls})


def test_congruence_class_limit():
    cone = pair_cone()
    ci = ConeImage(cone)  # DNA: 25 words under the maximum is too many bits
    x = make_sum(ci.peak_universe, ["AG", "CT", "GA", "TC", "AC"])
    with pytest.raises(UniverseTooLarge):
        list(congruence_class(ci, x, limit=4))
