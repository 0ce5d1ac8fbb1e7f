"""Shared fixtures: the worked-example cones and a few tiny alphabets."""
import pytest

from pedigrad import (
    BOOL,
    Alphabet,
    Chromology,
    DNA,
    RecombContext,
    make_cone,
    make_segment,
    parse_segment,
)

# Alphabet with a single proper letter (plus basepoint) and the two-letter one
# used throughout the exhaustive suites.
E1 = Alphabet(("-",))
E2 = Alphabet(("A", "-"))


@pytest.fixture(scope="session")
def homologous_peak():
    return parse_segment("(bbb)(ww)(bbbb)(bbbbb)(www)(w)")


@pytest.fixture(scope="session")
def homologous_distributive(homologous_peak):
    legs = [parse_segment(s) for s in (
        "(www)(ww)(bbbb)(wwwww)(www)(w)",
        "(www)(ww)(bbbb)(bbbbb)(www)(w)",
        "(bbb)(ww)(wwww)(bbbbb)(www)(w)",
    )]
    return make_cone("overlapping", homologous_peak, legs)


@pytest.fixture(scope="session")
def homologous_exact(homologous_peak):
    legs = [parse_segment(s) for s in (
        "(www)(ww)(bbbb)(wwwww)(www)(w)",
        "(www)(ww)(wwww)(bbbbb)(www)(w)",
        "(bbb)(ww)(wwww)(wwwww)(www)(w)",
    )]
    return make_cone("partition", homologous_peak, legs)


@pytest.fixture(scope="session")
def quasi_peak():
    return make_segment((1,) * 18, tuple("1" * 3 + "0" * 2 + "1" * 9 + "0" * 4))


@pytest.fixture(scope="session")
def quasi_distributive(quasi_peak):
    legs = [
        make_segment((2, 1, 2, 4, 3, 2, 3, 1),
                     ("0", "0", "0", "1", "0", "0", "0", "0")),
        parse_segment("(www)(ww)(bbbb)(bbbbb)(www)(w)"),
        parse_segment("(bbb)(ww)(wwww)(bbbbb)(www)(w)"),
    ]
    return make_cone("q-overlapping", quasi_peak, legs)


@pytest.fixture(scope="session")
def quasi_exact(quasi_peak):
    legs = [
        make_segment((2, 1, 2, 4, 3, 2, 3, 1),
                     ("0", "0", "0", "1", "0", "0", "0", "0")),
        parse_segment("(www)(ww)(wwww)(bbbbb)(www)(w)"),
        make_segment((3, 2, 2, 2, 5, 3, 1),
                     ("1", "0", "0", "0", "0", "0", "0")),
    ]
    return make_cone("q-partition", quasi_peak, legs)


@pytest.fixture(scope="session")
def haplogroup_ctx(homologous_exact):
    """Single-cone context at the exact trio's peak over DNA."""
    ch = Chromology(BOOL, (homologous_exact,))
    return RecombContext(ch, DNA, "1", homologous_exact.peak)


def pair_cone(name="pairs"):
    """Two singleton positions, one leg per position."""
    peak = parse_segment("(b)(b)")
    return make_cone(name, peak,
                     [parse_segment("(b)(w)"), parse_segment("(w)(b)")])


@pytest.fixture
def pair_ctx():
    cone = pair_cone()
    return RecombContext(Chromology(BOOL, (cone,)), DNA, "1", cone.peak)
