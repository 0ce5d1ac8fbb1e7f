"""Free semimodules over the Boolean semiring on finite word universes.

An element is a formal sum of words with idempotent addition, represented by
its support: a finite set of letter tuples drawn from a word universe (a
segment + alphabet + color, never materialized).  Addition is union and the
sub-element order is support inclusion.

A wide-span cone induces restriction maps from peak words to leg words;
``pi`` pushes a sum through all of them and ``beta`` glues a tuple of leg
sums back to the maximal peak sum with those projections.  ``beta(pi(x))``
is the top of x's recombination-congruence class (and a closure operator).
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import product as iproduct
from typing import Iterable, Iterator, Sequence, Union

from .alphabet import DNA, Alphabet, Letter
from .chromology import Cone, ConeClass, classify_cone
from .errors import ParseError, UniverseTooLarge, ValidationError
from .segment import Segment, truncate
from .words import Word

Letters = tuple  # a word's letter tuple; the raw currency of supports
SumLike = Union["BoolSum", str, Word, Iterable]


@dataclass(frozen=True)
class WordUniverse:
    """The lazy carrier: all words on one segment at one color."""

    segment: Segment
    alphabet: Alphabet = DNA
    b: str = "1"

    def __post_init__(self) -> None:
        if self.b not in self.segment.omega:
            raise ValidationError(f"unknown color {self.b!r}")

    @property
    def positions(self) -> tuple[int, ...]:
        return truncate(self.segment, self.b)

    @property
    def width(self) -> int:
        return len(self.positions)

    def size(self) -> int:
        return len(self.alphabet.letters) ** self.width

    def check_member(self, letters: Letters) -> Letters:
        if len(letters) != self.width:
            raise ValidationError(
                f"word of length {len(letters)} outside a width-{self.width} "
                "universe")
        for x in letters:
            if x not in self.alphabet:
                raise ValidationError(f"letter {x!r} outside the alphabet")
        return tuple(letters)

    def word(self, letters: Letters) -> Word:
        return Word(self.segment, self.b, tuple(letters), self.alphabet)

    def all_letter_tuples(self) -> Iterator[Letters]:
        yield from iproduct(self.alphabet.letters, repeat=self.width)


@dataclass(frozen=True)
class BoolSum:
    """A formal sum of words, stored as its support set."""

    universe: WordUniverse
    support: frozenset

    def __post_init__(self) -> None:
        for letters in self.support:
            self.universe.check_member(letters)

    @property
    def is_zero(self) -> bool:
        return not self.support

    def canonical(self) -> tuple[Letters, ...]:
        return tuple(sorted(self.support))

    def words(self) -> tuple[Word, ...]:
        return tuple(self.universe.word(ls) for ls in self.canonical())

    def __str__(self) -> str:
        return print_sum(self)


def make_sum(universe: WordUniverse, items: Iterable[SumLike] = ()) -> BoolSum:
    """Coerce strings / Words / letter tuples into a sum on the universe."""
    support = set()
    for item in items:
        if isinstance(item, Word):
            if (item.segment, item.b) != (universe.segment, universe.b):
                raise ValidationError(
                    "word lives on a different segment or color than the "
                    "universe")
            support.add(tuple(item.letters))
        elif isinstance(item, str):
            support.add(universe.check_member(tuple(item)))
        else:
            support.add(universe.check_member(tuple(item)))
    return BoolSum(universe, frozenset(support))


def zero(universe: WordUniverse) -> BoolSum:
    return BoolSum(universe, frozenset())


def add(x: BoolSum, y: BoolSum) -> BoolSum:
    """x + y: support union (idempotent, commutative, zero-neutral)."""
    if x.universe != y.universe:
        raise ValidationError("cannot add sums over different carriers")
    return BoolSum(x.universe, x.support | y.support)


def leq_support(x: BoolSum, y: BoolSum) -> bool:
    """The sub-element partial order: support inclusion."""
    if x.universe != y.universe:
        raise ValidationError("cannot compare sums over different carriers")
    return x.support <= y.support


def parse_sum(text: str, universe: WordUniverse) -> BoolSum:
    """Parse ``W1 + W2 + ...`` (whitespace optional); ``0`` is the zero sum."""
    body = text.strip()
    if body == "0":
        return zero(universe)
    if not body:
        raise ParseError("empty sum literal (write 0 for the zero sum)")
    support = set()
    for chunk in body.split("+"):
        token = chunk.strip()
        if not token:
            raise ParseError("empty summand in sum literal")
        for ch in token:
            if ch not in universe.alphabet:
                raise ParseError(f"unknown letter {ch!r} in sum literal")
        support.add(universe.check_member(tuple(token)))
    return BoolSum(universe, frozenset(support))


def print_sum(x: BoolSum) -> str:
    if x.is_zero:
        return "0"
    return " + ".join("".join(map(str, ls)) for ls in x.canonical())


# ---------------------------------------------------------------------------
# Wide-span cone images
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ConeImage:
    """A cone's word span: peak universe -> one universe per leg."""

    cone: Cone
    alphabet: Alphabet = DNA
    b: str = "1"

    def __post_init__(self) -> None:
        if self.cone.diagram_arrows:
            raise ValidationError(
                f"cone {self.cone.name} is not a wide span (it has diagram "
                "arrows); semimodule images need discrete cones")
        if self.b not in self.cone.peak.omega:
            raise ValidationError(f"unknown color {self.b!r}")

    @property
    def peak_universe(self) -> WordUniverse:
        return WordUniverse(self.cone.peak, self.alphabet, self.b)

    def leg_universe(self, k: int) -> WordUniverse:
        return WordUniverse(self.cone.leg_segment(k), self.alphabet, self.b)

    def leg_index_table(self, k: int) -> tuple[int, ...]:
        """0-based offsets of leg k's truncation inside the peak's."""
        peak_pos = truncate(self.cone.peak, self.b)
        where = {x: i for i, x in enumerate(peak_pos)}
        return tuple(where[x]
                     for x in truncate(self.cone.leg_segment(k), self.b))

    def restrict(self, k: int, letters: Letters) -> Letters:
        return tuple(letters[i] for i in self.leg_index_table(k))

    def is_cartesian(self) -> bool:
        """Whether beta can glue: the cone is exactly b-distributive."""
        return classify_cone(self.cone, self.b) is ConeClass.EXACTLY_DISTRIBUTIVE


def pi(ci: ConeImage, x: BoolSum) -> tuple[BoolSum, ...]:
    """Componentwise support image under each leg restriction; additive."""
    if x.universe != ci.peak_universe:
        raise ValidationError("sum does not live on the cone's peak universe")
    out = []
    for k in range(1, ci.cone.n_legs + 1):
        idx = ci.leg_index_table(k)
        support = frozenset(tuple(ls[i] for i in idx) for ls in x.support)
        out.append(BoolSum(ci.leg_universe(k), support))
    return tuple(out)


def beta(ci: ConeImage, t: Sequence[BoolSum]) -> BoolSum:
    """The sum over the Cartesian product of leg supports, glued to the peak.

    Any zero component collapses the whole product to zero (matching the
    bottom function).  Requires a Cartesian (exactly distributive) span.
    """
    if len(t) != ci.cone.n_legs:
        raise ValidationError(
            f"cone {ci.cone.name} has {ci.cone.n_legs} legs but "
            f"{len(t)} components given")
    if not ci.is_cartesian():
        raise ValidationError(
            f"cone {ci.cone.name} is not exactly {ci.b}-distributive: its "
            "word span is not Cartesian, so no glue exists")
    for k, comp in enumerate(t, start=1):
        if comp.universe != ci.leg_universe(k):
            raise ValidationError(f"component {k} does not live on leg {k}")
    peak_u = ci.peak_universe
    if any(comp.is_zero for comp in t):
        return zero(peak_u)
    # Exact + discrete means the leg truncations partition the peak's, so
    # every peak slot is owned by exactly one (leg, offset) pair.
    owner: dict[int, tuple[int, int]] = {}
    for k in range(1, ci.cone.n_legs + 1):
        for off, slot in enumerate(ci.leg_index_table(k)):
            owner.setdefault(slot, (k - 1, off))
    support = set()
    for combo in iproduct(*(sorted(comp.support) for comp in t)):
        letters = tuple(combo[leg][off]
                        for slot, (leg, off) in sorted(owner.items()))
        support.add(letters)
    return BoolSum(peak_u, frozenset(support))


def bottom(t: Sequence[BoolSum]) -> tuple[BoolSum, ...]:
    """Zero out the whole tuple when any component is zero."""
    if any(comp.is_zero for comp in t):
        return tuple(zero(comp.universe) for comp in t)
    return tuple(t)


def congruent_single(ci: ConeImage, x: BoolSum, y: BoolSum) -> bool:
    """Membership of (x, y) in the cone's recombination congruence."""
    return pi(ci, x) == pi(ci, y)


def congruence_class(ci: ConeImage, x: BoolSum,
                     limit: int = 1 << 20) -> Iterator[BoolSum]:
    """All sums congruent to x (they are the full-projection subsets of
    beta(pi(x))'s support); brute force, for oracles and tests."""
    top = beta(ci, pi(ci, x))
    members = top.canonical()
    if 2 ** len(members) > limit:
        raise UniverseTooLarge(
            f"congruence class of a {len(members)}-word top is too large "
            "to enumerate")
    target = pi(ci, x)
    for mask in range(2 ** len(members)):
        support = frozenset(ls for i, ls in enumerate(members)
                            if mask >> i & 1)
        candidate = BoolSum(x.universe, support)
        if pi(ci, candidate) == target:
            yield candidate
