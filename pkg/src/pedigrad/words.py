"""Words over pointed alphabets, indexed by segment truncations.

A word on a segment s at color b assigns a letter to every position of
Tr_b(s), in increasing position order; masked positions simply are not
stored.  Segment morphisms act on words by pulling letters back along their
position maps (unmatched positions become the basepoint), which gives the
gap-insertion behaviour of sequence alignment.  Exactly distributive cones
support concatenation: a word per leg glues to a unique word on the peak.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import product as iproduct
from typing import Callable, Iterator, Mapping, Optional, Sequence

from .alphabet import DNA, RNA, Alphabet, Letter, is_product, product_alphabet
from .chromology import Cone, ConeClass, classify_cone, make_cone
from .errors import ParseError, ValidationError
from .segment import (
    Segment,
    SegMorphism,
    invert_segment,
    truncate,
    validate_morphism,
)

__all__ = [
    "Word", "make_word", "word_from_literal", "print_word", "truncate",
    "map_word", "restrict_to_leg", "concat_along_cone", "crispr_edit",
    "pointwise_nat_trans", "transcribe", "mutation_span", "zip_words",
    "reverse_word", "word_universe",
]

#: Transcription: every nucleobase goes to its RNA anti-nucleobase.
TRANSCRIPTION = {"A": "U", "T": "A", "G": "C", "C": "G", "-": "-"}


@dataclass(frozen=True)
class Word:
    segment: Segment
    b: str
    letters: tuple[Letter, ...]
    alphabet: Alphabet = DNA

    def __post_init__(self) -> None:
        positions = truncate(self.segment, self.b)
        if len(self.letters) != len(positions):
            raise ValidationError(
                f"word has {len(self.letters)} letters but the segment's "
                f"truncation at {self.b!r} has {len(positions)} positions")
        for x in self.letters:
            if x not in self.alphabet:
                raise ValidationError(f"letter {x!r} outside the alphabet")

    @property
    def positions(self) -> tuple[int, ...]:
        return truncate(self.segment, self.b)

    def letter_at(self, i: int) -> Letter:
        """Letter at (1-based) position i; basepoint off the truncation."""
        table = dict(zip(self.positions, self.letters))
        return table.get(i, self.alphabet.basepoint)

    def __str__(self) -> str:
        return print_word(self)


def make_word(segment: Segment, letters: Sequence[Letter],
              alphabet: Alphabet = DNA, b: str = "1") -> Word:
    return Word(segment, b, tuple(letters), alphabet)


def word_from_literal(text: str, segment: Segment,
                      alphabet: Alphabet = DNA, b: str = "1") -> Word:
    """Parse a contiguous-symbol word literal like ``AG-TCAAGC``."""
    letters = []
    for k, ch in enumerate(text):
        if ch not in alphabet:
            raise ParseError(f"unknown letter {ch!r}", offset=k)
        letters.append(ch)
    return Word(segment, b, tuple(letters), alphabet)


def print_word(w: Word) -> str:
    if all(isinstance(x, str) for x in w.letters):
        return "".join(w.letters)  # type: ignore[arg-type]
    # Product-alphabet words have tuple letters; show both components.
    return " ".join("(" + ",".join(map(str, x)) + ")" for x in w.letters)


# ---------------------------------------------------------------------------
# Functorial action
# ---------------------------------------------------------------------------

def map_word(m: SegMorphism, w: Word, b: Optional[str] = None) -> Word:
    """Push a word on m.dom forward to m.cod.

    The letter at codomain position j is w's letter at i when j = f1(i), and
    the basepoint when j is not hit.  (Whenever j is in the codomain
    truncation and j = f1(i), color decrease puts i in the domain truncation,
    so the lookup never dangles.)
    """
    if w.segment != m.dom:
        raise ValidationError("word does not live on the morphism's domain")
    if b is not None and b != w.b:
        raise ValidationError(f"word is indexed at color {w.b!r}, not {b!r}")
    hit = {m.f1[i]: i + 1 for i in range(len(m.f1))}
    source = dict(zip(w.positions, w.letters))
    letters = []
    for j in truncate(m.cod, w.b):
        i = hit.get(j)
        letters.append(w.alphabet.basepoint if i is None else source[i])
    return Word(m.cod, w.b, tuple(letters), w.alphabet)


def restrict_to_leg(c: Cone, k: int, w: Word) -> Word:
    """Restrict a word on the peak along leg k's morphism."""
    return map_word(c.leg_morphism(k), w)


def concat_along_cone(c: Cone, b: str, parts: Sequence[Word]) -> Word:
    """Glue one word per leg into the unique peak word restricting to them."""
    if len(parts) != c.n_legs:
        raise ValidationError(
            f"cone {c.name} has {c.n_legs} legs but {len(parts)} parts given")
    if classify_cone(c, b) != ConeClass.EXACTLY_DISTRIBUTIVE:
        raise ValidationError(
            f"cone {c.name} is not exactly {b}-distributive; concatenation "
            "needs a disjoint exact cover of the peak truncation")
    alphabet = parts[0].alphabet if parts else DNA
    for k, part in enumerate(parts, start=1):
        if part.segment != c.leg_segment(k):
            raise ValidationError(f"part {k} does not live on leg {k}")
        if part.b != b:
            raise ValidationError(f"part {k} is indexed at color {part.b!r}")
        if part.alphabet != alphabet:
            raise ValidationError("parts use different alphabets")
    table: dict[int, Letter] = {}
    for part in parts:
        for x, letter in zip(part.positions, part.letters):
            table.setdefault(x, letter)
    letters = tuple(table[x] for x in truncate(c.peak, b))
    glued = Word(c.peak, b, letters, alphabet)
    # Non-discrete exact cones can cover a position with several legs; the
    # given parts must then agree wherever the diagram identifies them.
    for k, part in enumerate(parts, start=1):
        if restrict_to_leg(c, k, glued) != part:
            raise ValidationError(
                f"parts are not a compatible family: leg {k} disagrees with "
                "the glued word")
    return glued


# ---------------------------------------------------------------------------
# CRISPR editing
# ---------------------------------------------------------------------------

def crispr_edit(target: Word, patch: Word, window: tuple[int, int],
                blank_color: str = "0") -> Word:
    """Replace the fibers spanned by ``window`` with the patch.

    ``window`` is an inclusive 1-based position range that must start and end
    on fiber boundaries of the target's segment.  The patch must live on the
    complementary-window segment: same topology, window fibers keeping the
    target's colors, all other fibers blanked.
    """
    s = target.segment
    lo, hi = window
    if not (1 <= lo <= hi <= s.n1):
        raise ValidationError(f"window {lo}..{hi} out of range [1..{s.n1}]")
    jlo, jhi = s.fiber_of(lo), s.fiber_of(hi)
    if s.fiber_positions(jlo)[0] != lo:
        raise ValidationError(
            f"window start {lo} is not a fiber boundary of the target")
    if s.fiber_positions(jhi)[-1] != hi:
        raise ValidationError(
            f"window end {hi} is not a fiber boundary of the target")
    if blank_color not in s.omega:
        raise ValidationError(f"unknown color {blank_color!r}")
    in_window = [jlo <= j <= jhi for j in range(1, s.n0 + 1)]
    masked = Segment(s.omega, s.fiber_sizes, tuple(
        blank_color if inside else col
        for inside, col in zip(in_window, s.colors)))
    expected_patch = Segment(s.omega, s.fiber_sizes, tuple(
        col if inside else blank_color
        for inside, col in zip(in_window, s.colors)))
    if patch.segment != expected_patch:
        raise ValidationError(
            "patch must live on the window-complement segment "
            f"{expected_patch}")
    blanking = validate_morphism(s, masked, tuple(range(1, s.n1 + 1)))
    masked_word = map_word(blanking, target)
    cone = make_cone("crispr-window", s, [masked, expected_patch])
    return concat_along_cone(cone, target.b, [masked_word, patch])


# ---------------------------------------------------------------------------
# Letterwise transformations
# ---------------------------------------------------------------------------

def pointwise_nat_trans(f: Mapping[Letter, Letter] | Callable[[Letter], Letter],
                        w: Word, target: Optional[Alphabet] = None) -> Word:
    """Apply a basepoint-preserving letter map to every letter.

    Naturality in the segment is automatic (and property-tested): the map
    commutes with map_word for every segment morphism.
    """
    target = target or w.alphabet
    lookup = f.__getitem__ if isinstance(f, Mapping) else f
    eps = w.alphabet.basepoint
    try:
        image_eps = lookup(eps)
    except KeyError:
        raise ValidationError("letter map does not define the basepoint")
    if image_eps != target.basepoint:
        raise ValidationError(
            "letter map must send the basepoint to the basepoint")
    letters = []
    for x in w.letters:
        try:
            y = lookup(x)
        except KeyError:
            raise ValidationError(f"letter map does not define {x!r}")
        if y not in target:
            raise ValidationError(f"image letter {y!r} outside the alphabet")
        letters.append(y)
    return Word(w.segment, w.b, tuple(letters), target)


def transcribe(w: Word) -> Word:
    """DNA -> RNA anti-nucleobase transcription (A->U, T->A, G->C, C->G)."""
    return pointwise_nat_trans(TRANSCRIPTION, w, RNA)


def zip_words(w1: Word, w2: Word) -> Word:
    """Pair two parallel words into one over the product alphabet."""
    if w1.segment != w2.segment or w1.b != w2.b:
        raise ValidationError("paired words must share a segment and color")
    return Word(w1.segment, w1.b, tuple(zip(w1.letters, w2.letters)),
                product_alphabet(w1.alphabet, w2.alphabet))


def mutation_span(w_pair: Word) -> tuple[Word, Word]:
    """The two projections of a word over a product alphabet E x F.

    Reading the rows left-to-right turns the span into the mutation relation
    between the two projected strands.
    """
    if not is_product(w_pair.alphabet):
        raise ValidationError(
            "mutation spans need a product alphabet with a componentwise "
            "basepoint")
    firsts, seconds = [], []
    for a, b in w_pair.alphabet.letters:
        if a not in firsts:
            firsts.append(a)
        if b not in seconds:
            seconds.append(b)
    left_alpha = Alphabet(tuple(firsts), w_pair.alphabet.basepoint[0])
    right_alpha = Alphabet(tuple(seconds), w_pair.alphabet.basepoint[1])
    left = Word(w_pair.segment, w_pair.b,
                tuple(x[0] for x in w_pair.letters), left_alpha)
    right = Word(w_pair.segment, w_pair.b,
                 tuple(x[1] for x in w_pair.letters), right_alpha)
    return left, right


def reverse_word(w: Word) -> Word:
    """X1...Xn -> Xn...X1, living on the inverted segment; an involution."""
    return Word(invert_segment(w.segment), w.b, w.letters[::-1], w.alphabet)


# ---------------------------------------------------------------------------
# Enumeration (oracles, sub-functor plug-in)
# ---------------------------------------------------------------------------

def word_universe(segment: Segment, alphabet: Alphabet = DNA, b: str = "1",
                  predicate: Optional[Callable[[Word], bool]] = None,
                  ) -> Iterator[Word]:
    """All words on a segment, optionally filtered by a predicate.

    The predicate hook carves out sub-functors (e.g. "words occurring in a
    given genome"); no datasets ship here, callers supply their own.
    """
    n = len(truncate(segment, b))
    for letters in iproduct(alphabet.letters, repeat=n):
        w = Word(segment, b, letters, alphabet)
        if predicate is None or predicate(w):
            yield w
