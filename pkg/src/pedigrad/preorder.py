"""Finite pre-ordered sets of colors.

A :class:`Preorder` is a finite set of opaque color labels together with a
relation whose reflexive-transitive closure defines ``leq``.  Input edge sets
need not be transitively closed; construction closes them.

The two-color Boolean preorder {0 <= 1} is the workhorse: color "1" selects
(black patches), color "0" masks (white patches).  Products compare
componentwise and model several independent color axes at once.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from .errors import ParseError, ValidationError


@dataclass(frozen=True)
class Preorder:
    """A finite preorder: opaque labels plus declared <= edges.

    ``leq`` is computed on the reflexive-transitive closure of ``relation``,
    so reflexivity and transitivity hold for every constructed instance.
    """

    elements: tuple[str, ...]
    relation: frozenset[tuple[str, str]]
    _closure: frozenset[tuple[str, str]] = field(init=False, repr=False,
                                                 compare=False)

    def __post_init__(self) -> None:
        if len(set(self.elements)) != len(self.elements):
            raise ValidationError("preorder labels must be pairwise distinct")
        known = set(self.elements)
        for a, b in self.relation:
            if a not in known or b not in known:
                raise ValidationError(
                    f"preorder edge ({a},{b}) mentions an unknown color")
        object.__setattr__(self, "_closure", _close(self.elements, self.relation))

    def leq(self, a: str, b: str) -> bool:
        """True iff a <= b in the reflexive-transitive closure."""
        if a not in self._element_set or b not in self._element_set:
            missing = a if a not in self._element_set else b
            raise ValidationError(f"unknown color {missing!r}")
        return (a, b) in self._closure

    @property
    def _element_set(self) -> frozenset[str]:
        return frozenset(self.elements)

    def __contains__(self, color: str) -> bool:
        return color in self._element_set


def _close(elements: tuple[str, ...],
           relation: frozenset[tuple[str, str]]) -> frozenset[tuple[str, str]]:
    # Plain Warshall closure; color sets are tiny.
    reach: dict[str, set[str]] = {e: {e} for e in elements}
    for a, b in relation:
        reach[a].add(b)
    changed = True
    while changed:
        changed = False
        for a in elements:
            new = set()
            for b in reach[a]:
                new |= reach[b]
            if not new <= reach[a]:
                reach[a] |= new
                changed = True
    return frozenset((a, b) for a in elements for b in reach[a])


def make_preorder(elements: list[str] | tuple[str, ...],
                  edges: list[tuple[str, str]] | frozenset[tuple[str, str]] = (),
                  ) -> Preorder:
    return Preorder(tuple(elements), frozenset(edges))


#: The Boolean preorder {0 <= 1}: "1" selects, "0" masks.
BOOL: Preorder = make_preorder(("0", "1"), [("0", "1")])


def bool_preorder() -> Preorder:
    return BOOL


def product(p: Preorder, q: Preorder) -> Preorder:
    """Componentwise product preorder.

    Pair colors are serialized as "a*b"; leq((a,b),(c,d)) holds iff both
    p.leq(a,c) and q.leq(b,d).
    """
    elements = tuple(f"{a}*{b}" for a in p.elements for b in q.elements)
    edges = []
    for a in p.elements:
        for c in p.elements:
            if not p.leq(a, c):
                continue
            for b in q.elements:
                for d in q.elements:
                    if q.leq(b, d):
                        edges.append((f"{a}*{b}", f"{c}*{d}"))
    return make_preorder(elements, edges)


def pair_color(a: str, b: str) -> str:
    """The product-preorder label of the component pair (a, b)."""
    return f"{a}*{b}"


def parse_preorder(text: str) -> Preorder:
    """Parse the preorder DSL fragment used inside chromology files.

    Grammar::

        preorder bool
        preorder custom: a b c ; edges: a<b b<c

    The ``edges:`` clause is optional (a discrete preorder otherwise).
    """
    body = text.strip()
    if not body.startswith("preorder"):
        raise ParseError("expected 'preorder ...' declaration")
    body = body[len("preorder"):].strip()
    if body == "bool":
        return BOOL
    if not body.startswith("custom:"):
        raise ParseError(f"unknown preorder form {body.split(':')[0]!r} "
                         "(expected 'bool' or 'custom: ...')")
    body = body[len("custom:"):]
    if ";" in body:
        elems_part, _, edges_part = body.partition(";")
        edges_part = edges_part.strip()
        if not edges_part.startswith("edges:"):
            raise ParseError("expected 'edges:' after ';' in custom preorder")
        edges_part = edges_part[len("edges:"):]
    else:
        elems_part, edges_part = body, ""
    elements = tuple(elems_part.split())
    if not elements:
        raise ParseError("custom preorder declares no colors")
    edges = []
    for token in edges_part.split():
        if "<" not in token:
            raise ParseError(f"malformed edge {token!r} (expected a<b)")
        a, _, b = token.partition("<")
        edges.append((a, b))
    return make_preorder(elements, edges)
