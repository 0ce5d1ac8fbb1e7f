"""Event spaces and probability on recombination classes.

The Haldane setting: strands recombined from parent strands, a per-position
crossover probability p = x/n (x the map distance in morgans, n the count of
inter-letter positions), and the measure that weighs each strand by half of
p^t (1-p)^(n-t), t its minimal crossover count.  Map-distance tables compare
the exact binomial odd-crossover mass against its Poisson limit
(1 - e^(-2x)) / 2, and interference cone families encode position-dependent
recombination constraints as chromology input.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence

from .boolmod import BoolSum, WordUniverse, leq_support, zero
from .chromology import Cone, make_cone
from .errors import UniverseTooLarge, ValidationError
from .preorder import BOOL
from .recomb import RecombContext, saturate
from .segment import Segment
from .words import Word


@dataclass(frozen=True)
class EventSpace:
    """A union-closed family of sums containing zero, with a maximum."""

    universe: WordUniverse
    events: tuple[BoolSum, ...]
    sure_event: BoolSum

    def __post_init__(self) -> None:
        supports = {e.support for e in self.events}
        if frozenset() not in supports:
            raise ValidationError("event spaces must contain the zero sum")
        if self.sure_event.support not in supports:
            raise ValidationError("the sure event must itself be an event")
        for e in self.events:
            if e.universe != self.universe:
                raise ValidationError("event off the universe")
            if not leq_support(e, self.sure_event):
                raise ValidationError(
                    "the sure event must dominate every event")

    def __contains__(self, x: BoolSum) -> bool:
        return x.support in {e.support for e in self.events}


def event_space_from_class(ctx: RecombContext, x0: BoolSum, *,
                           class_bound: int = 16,
                           closure_check_budget: int = 1 << 18) -> EventSpace:
    """The pullback of {zero, class of x0} along the quotient map.

    Events are the zero sum plus every sum with the same saturation as x0;
    the sure event is the saturation itself.  The class is enumerated as the
    subsets of the saturated support (every member sits below the class
    maximum), so the saturated support may hold at most ``class_bound``
    words.  Union-stability is re-verified pairwise when that fits in
    ``closure_check_budget``; beyond it the closure argument is trusted.
    """
    sat = saturate(ctx, x0)
    members = sat.canonical()
    if len(members) > class_bound:
        raise UniverseTooLarge(
            f"saturated support has {len(members)} words; the class is too "
            f"large to enumerate (bound {class_bound})")
    events = [zero(ctx.tau_universe)]
    for mask in range(2 ** len(members)):
        support = frozenset(w for i, w in enumerate(members)
                            if mask >> i & 1)
        candidate = BoolSum(ctx.tau_universe, support)
        if support and saturate(ctx, candidate) == sat:
            events.append(candidate)
    space = EventSpace(ctx.tau_universe, tuple(events), sat)
    if len(events) ** 2 <= closure_check_budget:
        supports = {e.support for e in events}
        for e1 in events:
            for e2 in events:
                if e1.support | e2.support not in supports:
                    raise ValidationError(
                        "event space is not stable under binary unions")
    return space


# ---------------------------------------------------------------------------
# Crossover counting and Haldane's measure
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CrossoverModel:
    """n inter-letter positions, map distance x; p = x/n per position."""

    n_positions: int
    x: float

    def __post_init__(self) -> None:
        if self.n_positions < 1:
            raise ValidationError("a crossover model needs n_positions >= 1")
        if isinstance(self.x, (int, float)):
            if not 0 <= self.x <= self.n_positions:
                raise ValidationError(
                    "map distance must satisfy 0 <= x <= n_positions "
                    "(p may not exceed 1)")

    @property
    def p(self):
        return self.x / self.n_positions


def _min_switches(strand: tuple, parents: Sequence[tuple]) -> int:
    """Fewest parental-source switches writing the strand, by a forward DP
    over positions (resolves positions where parents share a letter)."""
    sources = []
    for i, letter in enumerate(strand):
        live = [k for k, par in enumerate(parents) if par[i] == letter]
        if not live:
            raise ValidationError(
                "strand is not a recombinant of the parents (position "
                f"{i + 1} matches no parent)")
        sources.append(live)
    if not sources:
        return 0
    cost = {k: 0 for k in sources[0]}
    for live in sources[1:]:
        best_any = min(cost.values())
        cost = {k: min(cost.get(k, math.inf), best_any + 1) for k in live}
    return min(cost.values())


def crossover_count(strand: Word, parents: Sequence[Word]) -> int:
    """Minimal number of crossovers producing the strand from the parents."""
    for par in parents:
        if (par.segment, par.b) != (strand.segment, strand.b):
            raise ValidationError(
                "parents must live on the strand's segment and color")
    return _min_switches(tuple(strand.letters),
                         [tuple(p.letters) for p in parents])


def recombinant_sum(universe: WordUniverse,
                    parents: Sequence[Word]) -> BoolSum:
    """The sure event: every positionwise mix of the parent letters."""
    tuples = [tuple(p.letters) for p in parents]
    support: set[tuple] = {()}
    for i in range(universe.width):
        letters = {t[i] for t in tuples}
        support = {prefix + (x,) for prefix in support for x in letters}
    return BoolSum(universe, frozenset(support))


def haldane_measure(ev: BoolSum, parents: Sequence[Word],
                    model: CrossoverModel, *,
                    experimental_multi_parent: bool = False):
    """Sum of (1/2) p^t (1-p)^(n-t) over the event's member strands.

    Haldane's model covers exactly two parents.  More parents switch to a
    k-source minimum-switch count under the same half weight, which is a
    non-standard extension and must be opted into explicitly.
    """
    if len(parents) < 2:
        raise ValidationError("the measure needs at least two parent strands")
    if len(parents) > 2 and not experimental_multi_parent:
        raise ValidationError(
            "more than two parents is an experimental extension; pass "
            "experimental_multi_parent=True to accept its non-standard "
            "weighting")
    if model.n_positions != ev.universe.width - 1:
        raise ValidationError(
            f"model has {model.n_positions} inter-letter positions but the "
            f"universe's words have {ev.universe.width} letters")
    parent_tuples = [tuple(p.letters) for p in parents]
    p, n = model.p, model.n_positions
    total = 0
    for w in ev.canonical():
        t = _min_switches(w, parent_tuples)
        total = total + p ** t * (1 - p) ** (n - t) / 2
    return total


# ---------------------------------------------------------------------------
# Mapping functions
# ---------------------------------------------------------------------------

def exact_odd_mass(n: int, x: float) -> float:
    """P(odd crossover count) for Binomial(n, x/n), via the closed form
    (1 - (1-2p)^n) / 2 (stable for large n)."""
    if n < 1:
        raise ValidationError("n must be >= 1")
    if x > n:
        raise ValidationError("x > n would mean p > 1")
    p = x / n
    return (1 - (1 - 2 * p) ** n) / 2


def exact_odd_mass_explicit(n: int, x: float) -> float:
    """The explicit odd-t binomial sum; debug path for the closed form."""
    p = x / n
    return sum(math.comb(n, t) * p ** t * (1 - p) ** (n - t)
               for t in range(1, n + 1, 2))


def poisson_limit(x: float) -> float:
    """(1 - e^(-2x)) / 2, the map-distance limit of the odd mass."""
    return (1 - math.exp(-2 * x)) / 2


def poisson_odd_series(x: float, tol: float = 1e-22) -> float:
    """Sum over odd t of x^t e^(-x) / t!, truncated once the terms drop
    below tol past the mode (terms decay factorially for t > x)."""
    total, t = 0.0, 1
    while True:
        term = x ** t * math.exp(-x) / math.factorial(t)
        total += term
        if t > x and term < tol:
            return total
        t += 2
        if t > 1000:
            return total


def mapfun_table(n: int, x_values: Iterable[float],
                 ) -> tuple[tuple[float, float, float], ...]:
    """Rows (x, exact odd mass at p = x/n, Poisson limit)."""
    return tuple((x, exact_odd_mass(n, x), poisson_limit(x))
                 for x in x_values)


def format_mapfun_tsv(rows: Iterable[tuple[float, float, float]]) -> str:
    lines = ["x\texact\tpoisson"]
    for x, exact, poisson in rows:
        lines.append(f"{x:.17g}\t{exact:.17g}\t{poisson:.17g}")
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# Interference cone families
# ---------------------------------------------------------------------------

def interference_cones(n: int,
                       block_pattern: Sequence[tuple[int, bool]],
                       ) -> tuple[Cone, ...]:
    """All translates of a block pattern along an n-position segment.

    Selected blocks are black and get their own leg; unselected blocks stay
    white (no leg); the positions outside the pattern window form black
    flanking blocks with one leg each, so that every emitted cone is exactly
    1-distributive and can feed a recombination context directly.
    """
    for length, _ in block_pattern:
        if length < 1:
            raise ValidationError("pattern block lengths must be >= 1")
    window = sum(length for length, _ in block_pattern)
    if window > n:
        raise ValidationError(
            f"pattern spans {window} positions but the segment has {n}")
    cones = []
    for offset in range(n - window + 1):
        blocks: list[tuple[int, str]] = []
        if offset:
            blocks.append((offset, "gap"))
        blocks.extend((length, "sel" if sel else "unsel")
                      for length, sel in block_pattern)
        tail = n - window - offset
        if tail:
            blocks.append((tail, "gap"))
        sizes = tuple(length for length, _ in blocks)
        peak = Segment(BOOL, sizes, tuple(
            "0" if kind == "unsel" else "1" for _, kind in blocks))
        legs = []
        for idx, (_, kind) in enumerate(blocks):
            if kind == "unsel":
                continue
            legs.append(Segment(BOOL, sizes, tuple(
                "1" if j == idx else "0" for j in range(len(blocks)))))
        cones.append(make_cone(f"shift{offset}", peak, legs))
    return tuple(cones)
