"""Cones over quasi-homologous segments, and chromologies.

A cone has a peak segment and a family of legs, each reached from the peak by
an identity-topology morphism (so all participants share one domain size).
Optional diagram arrows between legs make the index shape non-discrete; they
must commute with the leg morphisms, which forces their position maps to be
the identity as well.

Classification at a color b computes the colimit of the leg truncation sets
(disjoint union modulo the arrow-generated equivalence, via union-find) and
factors it through the plain union of those sets:

* DISTRIBUTIVE         — the union covers Tr_b(peak);
* EXACTLY_DISTRIBUTIVE — additionally the colimit maps injectively onto the
  union (for discrete diagrams: the leg truncations are pairwise disjoint).
"""
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from .alphabet import DNA, Alphabet, parse_alphabet
from .errors import ParseError, ValidationError
from .preorder import Preorder, parse_preorder
from .segment import (
    AUTO,
    Segment,
    SegMorphism,
    compose,
    invert_segment,
    leq_quasi_homologous,
    parse_index_list,
    parse_segment,
    print_segment,
    truncate,
    validate_morphism,
)


class ConeClass(Enum):
    NOT_DISTRIBUTIVE = "NOT_DISTRIBUTIVE"
    DISTRIBUTIVE = "DISTRIBUTIVE"
    EXACTLY_DISTRIBUTIVE = "EXACTLY_DISTRIBUTIVE"


@dataclass(frozen=True)
class Cone:
    """A validated cone; prefer make_cone, which infers the morphisms."""

    name: str
    peak: Segment
    legs: tuple[tuple[Segment, SegMorphism], ...]
    diagram_arrows: tuple[tuple[int, int, SegMorphism], ...] = ()

    def __post_init__(self) -> None:
        if not self.name or len(self.name.split()) != 1:
            raise ValidationError("cone name must be a single identifier")
        ident = tuple(range(1, self.peak.n1 + 1))
        for k, (seg, m) in enumerate(self.legs, start=1):
            if seg.n1 != self.peak.n1:
                raise ValidationError(
                    f"cone {self.name}: leg {k} has domain size {seg.n1}, "
                    f"peak has {self.peak.n1} (cone legs must be "
                    "quasi-homologous to the peak)")
            if m.dom != self.peak or m.cod != seg:
                raise ValidationError(
                    f"cone {self.name}: leg {k} morphism does not go from "
                    "the peak to the leg")
            if m.f1 != ident:
                raise ValidationError(
                    f"cone {self.name}: leg {k} morphism must keep positions "
                    "fixed (f1 = identity)")
        for i, j, m in self.diagram_arrows:
            if not (1 <= i <= len(self.legs) and 1 <= j <= len(self.legs)):
                raise ValidationError(
                    f"cone {self.name}: arrow {i} -> {j} references a "
                    "missing leg")
            if m.dom != self.legs[i - 1][0] or m.cod != self.legs[j - 1][0]:
                raise ValidationError(
                    f"cone {self.name}: arrow {i} -> {j} morphism endpoints "
                    "do not match the legs")
            if compose(m, self.legs[i - 1][1]) != self.legs[j - 1][1]:
                raise ValidationError(
                    f"cone {self.name}: arrow {i} -> {j} does not commute "
                    "with the leg morphisms")

    @property
    def n_legs(self) -> int:
        return len(self.legs)

    def leg_segment(self, k: int) -> Segment:
        return self.legs[k - 1][0]

    def leg_morphism(self, k: int) -> SegMorphism:
        return self.legs[k - 1][1]


def make_cone(name: str, peak: Segment, legs, arrows=()) -> Cone:
    """Build a cone, inferring leg and arrow morphisms when not given.

    ``legs``: segments, or (segment, morphism) pairs.  ``arrows``: (i, j)
    pairs (unique identity-topology morphism inferred) or (i, j, morphism).
    """
    built_legs: list[tuple[Segment, SegMorphism]] = []
    for k, leg in enumerate(legs, start=1):
        if isinstance(leg, Segment):
            m = leq_quasi_homologous(peak, leg)
            if m is None:
                raise ValidationError(
                    f"cone {name}: no identity-topology morphism from the "
                    f"peak to leg {k} ({print_segment(leg)}); legs must "
                    "coarsen the peak's topology without color increase")
            built_legs.append((leg, m))
        else:
            seg, m = leg
            built_legs.append((seg, m))
    built_arrows: list[tuple[int, int, SegMorphism]] = []
    for arrow in arrows:
        if len(arrow) == 2:
            i, j = arrow
            if not (1 <= i <= len(built_legs) and 1 <= j <= len(built_legs)):
                raise ValidationError(
                    f"cone {name}: arrow {i} -> {j} references a missing leg")
            m = leq_quasi_homologous(built_legs[i - 1][0],
                                     built_legs[j - 1][0])
            if m is None:
                raise ValidationError(
                    f"cone {name}: no identity-topology morphism for arrow "
                    f"{i} -> {j}")
        else:
            i, j, m = arrow
        built_arrows.append((i, j, m))
    return Cone(name, peak, tuple(built_legs), tuple(built_arrows))


@dataclass(frozen=True)
class Chromology:
    """A preorder of colors plus a finite family of named cones over it."""

    omega: Preorder
    cones: tuple[Cone, ...]

    def __post_init__(self) -> None:
        names = [c.name for c in self.cones]
        if len(set(names)) != len(names):
            raise ValidationError("cone names must be unique")
        for c in self.cones:
            if c.peak.omega != self.omega:
                raise ValidationError(
                    f"cone {c.name} lives over a different preorder")

    def cone(self, name: str) -> Cone:
        for c in self.cones:
            if c.name == name:
                return c
        raise ValidationError(f"no cone named {name!r}")


# ---------------------------------------------------------------------------
# Classification
# ---------------------------------------------------------------------------

class _UnionFind:
    """Union-find with deterministic smallest-pair representatives."""

    def __init__(self, nodes):
        self.parent = {v: v for v in nodes}

    def find(self, v):
        p = self.parent
        while p[v] != v:
            p[v] = p[p[v]]  # path halving
            v = p[v]
        return v

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return
        if rb < ra:
            ra, rb = rb, ra
        self.parent[rb] = ra


def classify_cone(c: Cone, b: str) -> ConeClass:
    """Classify a cone at color b (see the module docstring)."""
    omega = c.peak.omega
    if b not in omega:
        raise ValidationError(f"unknown color {b!r}")
    legs_tr = [frozenset(truncate(seg, b)) for seg, _ in c.legs]
    uf = _UnionFind([(a, x) for a, tr in enumerate(legs_tr, 1) for x in tr])
    for i, j, m in c.diagram_arrows:
        # Positions in Tr_b of the arrow's codomain leg pull back into the
        # domain leg's truncation (colors only decrease along morphisms).
        back = {m.f1[k]: k + 1 for k in range(len(m.f1))}
        for x in legs_tr[j - 1]:
            if x in back:
                uf.union((i, back[x]), (j, x))
    union: set[int] = set()
    for tr in legs_tr:
        union |= tr
    if union != set(truncate(c.peak, b)):
        return ConeClass.NOT_DISTRIBUTIVE
    for x in union:
        classes = {uf.find((a, x))
                   for a, tr in enumerate(legs_tr, 1) if x in tr}
        if len(classes) > 1:
            return ConeClass.DISTRIBUTIVE
    return ConeClass.EXACTLY_DISTRIBUTIVE


def is_inversible(ch: Chromology) -> bool:
    """True iff every cone's mirror image is in ch, up to leg reordering."""
    def shape(peak: Segment, leg_segs):
        return (peak.fiber_sizes, peak.colors,
                tuple(sorted((s.fiber_sizes, s.colors) for s in leg_segs)))

    shapes = {shape(c.peak, [s for s, _ in c.legs]) for c in ch.cones}
    for c in ch.cones:
        mirrored = shape(invert_segment(c.peak),
                         [invert_segment(s) for s, _ in c.legs])
        if mirrored not in shapes:
            return False
    return True


def invert_chromology(ch: Chromology) -> Chromology:
    """Mirror every cone; inversibility is preserved under this."""
    cones = []
    for c in ch.cones:
        cones.append(make_cone(
            c.name, invert_segment(c.peak),
            [invert_segment(s) for s, _ in c.legs],
            [(i, j) for i, j, _ in c.diagram_arrows]))
    return Chromology(ch.omega, tuple(cones))


def is_finite_wide(ch: Chromology) -> bool:
    """True iff every cone is a wide span (no diagram arrows)."""
    return all(not c.diagram_arrows for c in ch.cones)


# ---------------------------------------------------------------------------
# Chromology files
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ChromologyDoc:
    """A parsed chromology file: the chromology plus its word alphabet."""

    chromology: Chromology
    alphabet: Alphabet


def parse_chromology(text: str) -> ChromologyDoc:
    """Parse the line-oriented chromology grammar.

    ``preorder bool`` (or ``preorder custom: ...``) must come first; an
    optional ``alphabet ... ; basepoint -`` line defaults to DNA; then cone
    blocks ``cone NAME`` / ``peak:`` / ``leg:`` (one or more) / optional
    ``arrow: i -> j [f1=[...]] [f0=auto]`` / ``end``.  '#' starts a comment.
    """
    omega: Preorder | None = None
    alphabet: Alphabet | None = None
    cones: list[Cone] = []
    block: dict | None = None

    def fail(msg: str, lineno: int):
        raise ParseError(msg, line=lineno)

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        try:
            if line.startswith("preorder"):
                if block is not None:
                    fail("preorder declaration inside a cone block", lineno)
                if omega is not None:
                    fail("duplicate preorder declaration", lineno)
                omega = parse_preorder(line)
            elif line.startswith("alphabet"):
                if block is not None:
                    fail("alphabet declaration inside a cone block", lineno)
                alphabet = parse_alphabet(line)
            elif line.startswith("cone"):
                if block is not None:
                    fail("cone block not closed before next 'cone'", lineno)
                if omega is None:
                    fail("cone declared before any preorder", lineno)
                name = line[len("cone"):].strip()
                if not name:
                    fail("cone needs a name", lineno)
                block = {"name": name, "peak": None, "legs": [], "arrows": []}
            elif line.startswith("peak:"):
                if block is None:
                    fail("'peak:' outside a cone block", lineno)
                if block["peak"] is not None:
                    fail("duplicate 'peak:' line", lineno)
                block["peak"] = parse_segment(line[len("peak:"):], omega)
            elif line.startswith("leg:"):
                if block is None:
                    fail("'leg:' outside a cone block", lineno)
                if block["peak"] is None:
                    fail("'leg:' before 'peak:'", lineno)
                block["legs"].append(parse_segment(line[len("leg:"):], omega))
            elif line.startswith("arrow:"):
                if block is None:
                    fail("'arrow:' outside a cone block", lineno)
                block["arrows"].append(
                    _parse_arrow(line[len("arrow:"):], lineno))
            elif line == "end":
                if block is None:
                    fail("'end' outside a cone block", lineno)
                if block["peak"] is None:
                    fail(f"cone {block['name']} has no peak", lineno)
                if not block["legs"]:
                    fail(f"cone {block['name']} has no legs", lineno)
                cones.append(_build_block(block))
                block = None
            else:
                fail(f"unrecognized line {line!r}", lineno)
        except ParseError as exc:
            if exc.line is None:
                raise ParseError(exc.message, line=lineno) from None
            raise
    if block is not None:
        raise ParseError(f"cone {block['name']} has no 'end'")
    if omega is None:
        raise ParseError("chromology file declares no preorder")
    return ChromologyDoc(Chromology(omega, tuple(cones)), alphabet or DNA)


def _parse_arrow(rest: str, lineno: int):
    tokens = rest.split()
    if len(tokens) < 3 or tokens[1] != "->":
        raise ParseError("arrow must look like 'arrow: i -> j'", line=lineno)
    try:
        i, j = int(tokens[0]), int(tokens[2])
    except ValueError:
        raise ParseError("arrow endpoints must be leg numbers", line=lineno)
    f1 = None
    f0: object = AUTO
    for tok in tokens[3:]:
        if tok.startswith("f1="):
            f1 = parse_index_list(tok[3:])
        elif tok.startswith("f0="):
            f0 = AUTO if tok[3:] == "auto" else parse_index_list(tok[3:])
        else:
            raise ParseError(f"unrecognized arrow option {tok!r}", line=lineno)
    return (i, j, f1, f0)


def _build_block(block: dict) -> Cone:
    arrows = []
    for i, j, f1, f0 in block["arrows"]:
        if f1 is None:
            arrows.append((i, j))
        else:
            if not (1 <= i <= len(block["legs"])
                    and 1 <= j <= len(block["legs"])):
                raise ValidationError(
                    f"cone {block['name']}: arrow {i} -> {j} references a "
                    "missing leg")
            m = validate_morphism(block["legs"][i - 1], block["legs"][j - 1],
                                  f1, f0)
            arrows.append((i, j, m))
    return make_cone(block["name"], block["peak"], block["legs"], arrows)
