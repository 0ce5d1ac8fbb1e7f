"""Segments over a preorder and their morphisms.

A segment is an order-preserving surjection t: [n1] -> [n0] together with a
color per fiber.  t is stored as the sequence of fiber sizes, which makes
non-monotone or non-surjective topologies unrepresentable.  All serialized
indices are 1-based ([n] = {1..n}); internally we keep 1-based values too so
that I/O and code read the same.

A morphism (f1, f0): (t,c) -> (t',c') consists of a strictly increasing
injection f1 on positions and a monotone map f0 on fibers such that

* the square commutes:   t'(f1(i)) = f0(t(i)),
* colors never increase: c'(f0(j)) <= c(j)  in the ambient preorder.

Because t is surjective, f0 is determined by f1 whenever it exists, which is
what ``f0=AUTO`` inference relies on.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterator, Optional

from .errors import CapExceeded, ParseError, ValidationError
from .preorder import BOOL, Preorder

#: Sentinel requesting inference of f0 from f1 in validate_morphism.
AUTO = "auto"


@dataclass(frozen=True)
class Segment:
    """A colored segment: fiber sizes plus one color per fiber."""

    omega: Preorder
    fiber_sizes: tuple[int, ...]
    colors: tuple[str, ...]
    # Cumulative fiber boundaries; _starts[j] is the first (1-based) position
    # of fiber j+1.  Precomputed because fiber lookups are everywhere.
    _starts: tuple[int, ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        if len(self.fiber_sizes) != len(self.colors):
            raise ValidationError("segment needs exactly one color per fiber")
        if any(s < 1 for s in self.fiber_sizes):
            raise ValidationError(
                "zero-size fibers are forbidden (only the fully empty "
                "segment has no positions)")
        for c in self.colors:
            if c not in self.omega:
                raise ValidationError(f"unknown color {c!r} in segment")
        starts, acc = [], 1
        for s in self.fiber_sizes:
            starts.append(acc)
            acc += s
        object.__setattr__(self, "_starts", tuple(starts))

    @property
    def n1(self) -> int:
        return sum(self.fiber_sizes)

    @property
    def n0(self) -> int:
        return len(self.fiber_sizes)

    def fiber_of(self, i: int) -> int:
        """The (1-based) fiber index t(i) of a (1-based) position."""
        if not 1 <= i <= self.n1:
            raise ValidationError(f"position {i} outside [{self.n1}]")
        # Fibers are short in practice; linear scan keeps this simple.
        for j in range(self.n0 - 1, -1, -1):
            if i >= self._starts[j]:
                return j + 1
        raise AssertionError("unreachable")

    def fiber_positions(self, j: int) -> range:
        """The positions of (1-based) fiber j as a range."""
        if not 1 <= j <= self.n0:
            raise ValidationError(f"fiber {j} outside [{self.n0}]")
        start = self._starts[j - 1]
        return range(start, start + self.fiber_sizes[j - 1])

    def color_at(self, i: int) -> str:
        """The color of the fiber containing position i."""
        return self.colors[self.fiber_of(i) - 1]

    def topology(self) -> tuple[int, ...]:
        """t as a position -> fiber table (1-based fibers)."""
        out = []
        for j, s in enumerate(self.fiber_sizes, start=1):
            out.extend([j] * s)
        return tuple(out)

    def __str__(self) -> str:
        return print_segment(self)


def make_segment(fiber_sizes: list[int] | tuple[int, ...],
                 colors: list[str] | tuple[str, ...],
                 omega: Preorder = BOOL) -> Segment:
    return Segment(omega, tuple(fiber_sizes), tuple(colors))


def empty_segment(omega: Preorder = BOOL) -> Segment:
    """The empty segment (n0 = n1 = 0), the initial object."""
    return Segment(omega, (), ())


def truncate(s: Segment, b: str) -> tuple[int, ...]:
    """Tr_b(s): the sorted positions whose fiber color is >= b."""
    if b not in s.omega:
        raise ValidationError(f"unknown color {b!r}")
    out: list[int] = []
    for j in range(1, s.n0 + 1):
        if s.omega.leq(b, s.colors[j - 1]):
            out.extend(s.fiber_positions(j))
    return tuple(out)


# ---------------------------------------------------------------------------
# Serialization
# ---------------------------------------------------------------------------

_BW = {"b": "1", "w": "0"}
_BW_REV = {"1": "b", "0": "w"}


def parse_segment(text: str, omega: Preorder = BOOL) -> Segment:
    """Parse a segment literal.

    Grammar: ``segment := group*``, ``group := '(' body ')'`` where ``body``
    is either a run of identical colorchars ('b' -> color "1", 'w' -> "0")
    or ``count ':' colorlabel``.  Whitespace between groups is ignored.
    """
    fibers: list[int] = []
    colors: list[str] = []
    i, n = 0, len(text)
    while i < n:
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        if ch != "(":
            raise ParseError(f"expected '(' but found {ch!r}", offset=i)
        close = text.find(")", i + 1)
        if close < 0:
            raise ParseError("unclosed '('", offset=i)
        body = text[i + 1:close]
        if not body:
            raise ParseError("empty fiber group '()' is forbidden", offset=i)
        if ":" in body:
            count_s, _, label = body.partition(":")
            try:
                count = int(count_s)
            except ValueError:
                raise ParseError(f"bad fiber count {count_s!r}", offset=i + 1)
            if count < 1:
                raise ParseError("fiber count must be >= 1", offset=i + 1)
            color = label.strip()
        else:
            first = body[0]
            if any(c != first for c in body):
                raise ParseError(
                    "mixed colors inside one bracket group", offset=i + 1)
            if first not in _BW:
                raise ParseError(f"unknown colorchar {first!r}", offset=i + 1)
            count, color = len(body), _BW[first]
        if color not in omega:
            raise ParseError(f"unknown color {color!r}", offset=i + 1)
        fibers.append(count)
        colors.append(color)
        i = close + 1
    return Segment(omega, tuple(fibers), tuple(colors))


def print_segment(s: Segment) -> str:
    """Canonical form: b/w runs when all colors are Boolean, else (n:color)."""
    if all(c in _BW_REV for c in s.colors):
        return "".join(f"({_BW_REV[c] * k})"
                       for k, c in zip(s.fiber_sizes, s.colors))
    return "".join(f"({k}:{c})" for k, c in zip(s.fiber_sizes, s.colors))


# ---------------------------------------------------------------------------
# Morphisms
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SegMorphism:
    """A validated segment morphism (f1, f0); construct via validate_morphism."""

    dom: Segment
    cod: Segment
    f1: tuple[int, ...]
    f0: tuple[int, ...]

    def apply_f1(self, i: int) -> int:
        return self.f1[i - 1]

    def apply_f0(self, j: int) -> int:
        return self.f0[j - 1]

    def is_identity(self) -> bool:
        return (self.dom == self.cod
                and self.f1 == tuple(range(1, self.dom.n1 + 1))
                and self.f0 == tuple(range(1, self.dom.n0 + 1)))


def identity_morphism(s: Segment) -> SegMorphism:
    return SegMorphism(s, s, tuple(range(1, s.n1 + 1)),
                       tuple(range(1, s.n0 + 1)))


def validate_morphism(dom: Segment, cod: Segment,
                      f1: list[int] | tuple[int, ...],
                      f0: list[int] | tuple[int, ...] | str = AUTO,
                      ) -> SegMorphism:
    """Check (f1, f0) against both morphism invariants; infer f0 on AUTO.

    Raises ValidationError naming the broken invariant: non-injective or
    non-monotone f1, a non-commuting square, or a color increase (turning
    white regions into black ones is forbidden).
    """
    if dom.omega is not cod.omega and dom.omega != cod.omega:
        raise ValidationError("dom and cod live over different preorders")
    f1 = tuple(f1)
    if len(f1) != dom.n1:
        raise ValidationError(
            f"f1 has {len(f1)} entries, domain has {dom.n1} positions")
    for v in f1:
        if not 1 <= v <= cod.n1:
            raise ValidationError(f"f1 value {v} outside codomain [{cod.n1}]")
    if any(f1[k] >= f1[k + 1] for k in range(len(f1) - 1)):
        raise ValidationError("f1 must be strictly increasing (injective and "
                              "order-preserving)")

    inferred = _infer_f0(dom, cod, f1)
    if f0 == AUTO:
        if inferred is None:
            raise ValidationError(
                "square does not commute: some domain fiber is split across "
                "codomain fibers, so no f0 exists")
        f0 = inferred
    else:
        f0 = tuple(f0)
        if len(f0) != dom.n0:
            raise ValidationError(
                f"f0 has {len(f0)} entries, domain has {dom.n0} fibers")
        for v in f0:
            if not 1 <= v <= cod.n0:
                raise ValidationError(
                    f"f0 value {v} outside codomain [{cod.n0}]")
        if f0 != inferred:
            raise ValidationError(
                "square does not commute: cod.t(f1(i)) != f0(dom.t(i))")

    for j in range(1, dom.n0 + 1):
        target = cod.colors[f0[j - 1] - 1]
        source = dom.colors[j - 1]
        if not dom.omega.leq(target, source):
            raise ValidationError(
                f"color increase on fiber {j}: {source!r} -> {target!r} "
                "(morphisms may only decrease colors; turning white regions "
                "into black ones is forbidden)")
    return SegMorphism(dom, cod, f1, tuple(f0))


def _infer_f0(dom: Segment, cod: Segment,
              f1: tuple[int, ...]) -> Optional[tuple[int, ...]]:
    """The unique f0 making the square commute, or None if no such map."""
    f0: list[int] = []
    for j in range(1, dom.n0 + 1):
        images = {cod.fiber_of(f1[i - 1]) for i in dom.fiber_positions(j)}
        if len(images) != 1:
            return None
        f0.append(images.pop())
    # Monotonicity of the inferred f0 is automatic: f1 is increasing and the
    # codomain fibers are intervals.
    return tuple(f0)


def compose(g: SegMorphism, f: SegMorphism) -> SegMorphism:
    """g after f (requires f.cod = g.dom)."""
    if f.cod != g.dom:
        raise ValidationError("compose: f.cod != g.dom")
    f1 = tuple(g.f1[v - 1] for v in f.f1)
    f0 = tuple(g.f0[v - 1] for v in f.f0)
    return SegMorphism(f.dom, g.cod, f1, f0)


def leq_quasi_homologous(s1: Segment, s2: Segment) -> Optional[SegMorphism]:
    """The unique morphism (id, f0): s1 -> s2, if one exists.

    Both segments must share a domain size (quasi-homologous comparison).
    Returns None when the topologies don't coarsen or a color would increase.
    """
    if s1.n1 != s2.n1:
        raise ValidationError(
            f"quasi-homologous comparison needs equal domain sizes "
            f"({s1.n1} != {s2.n1})")
    ident = tuple(range(1, s1.n1 + 1))
    inferred = _infer_f0(s1, s2, ident)
    if inferred is None:
        return None
    for j in range(1, s1.n0 + 1):
        if not s1.omega.leq(s2.colors[inferred[j - 1] - 1], s1.colors[j - 1]):
            return None
    return SegMorphism(s1, s2, ident, inferred)


def enumerate_morphisms(dom: Segment, cod: Segment,
                        cap: int = 100_000) -> list[SegMorphism]:
    """All morphisms dom -> cod, ordered lexicographically by f1.

    Raises CapExceeded as soon as more than ``cap`` valid morphisms are
    found; results are never silently truncated.
    """
    out: list[SegMorphism] = []
    if dom.n1 > cod.n1:
        return out
    for f1 in combinations(range(1, cod.n1 + 1), dom.n1):
        f0 = _infer_f0(dom, cod, f1)
        if f0 is None:
            continue
        ok = all(
            dom.omega.leq(cod.colors[f0[j - 1] - 1], dom.colors[j - 1])
            for j in range(1, dom.n0 + 1))
        if not ok:
            continue
        if len(out) >= cap:
            raise CapExceeded(
                f"more than {cap} morphisms from {print_segment(dom)} to "
                f"{print_segment(cod)}")
        out.append(SegMorphism(dom, cod, tuple(f1), f0))
    return out


# ---------------------------------------------------------------------------
# Inversion
# ---------------------------------------------------------------------------

def invert_segment(s: Segment) -> Segment:
    """Reverse the segment end to end (fibers and colors); an involution."""
    return Segment(s.omega, s.fiber_sizes[::-1], s.colors[::-1])


def invert_morphism(m: SegMorphism) -> SegMorphism:
    """Conjugate f1 and f0 by the order-reversing bijections rv_n."""
    dom, cod = invert_segment(m.dom), invert_segment(m.cod)
    n1, n1c = m.dom.n1, m.cod.n1
    n0, n0c = m.dom.n0, m.cod.n0
    f1 = tuple(n1c + 1 - m.f1[(n1 + 1 - i) - 1] for i in range(1, n1 + 1))
    f0 = tuple(n0c + 1 - m.f0[(n0 + 1 - j) - 1] for j in range(1, n0 + 1))
    return SegMorphism(dom, cod, f1, f0)


# ---------------------------------------------------------------------------
# Morphism literals (CLI plumbing)
# ---------------------------------------------------------------------------

def parse_index_list(text: str) -> tuple[int, ...]:
    """Parse ``[i,j,...]`` (brackets optional; empty means the empty tuple)."""
    body = text.strip()
    if body.startswith("[") and body.endswith("]"):
        body = body[1:-1]
    body = body.strip()
    if not body:
        return ()
    out = []
    for tok in body.split(","):
        tok = tok.strip()
        try:
            out.append(int(tok))
        except ValueError:
            raise ParseError(f"bad index {tok!r} in index list")
    return tuple(out)


def segments_iter(omega: Preorder, n1: int) -> Iterator[Segment]:
    """All segments with domain size n1 over omega (test/oracle helper)."""
    if n1 == 0:
        yield empty_segment(omega)
        return
    from itertools import product as iproduct

    def compositions(n: int) -> Iterator[tuple[int, ...]]:
        if n == 0:
            yield ()
            return
        for first in range(1, n + 1):
            for rest in compositions(n - first):
                yield (first,) + rest

    for fibers in compositions(n1):
        for colors in iproduct(omega.elements, repeat=len(fibers)):
            yield Segment(omega, fibers, colors)
