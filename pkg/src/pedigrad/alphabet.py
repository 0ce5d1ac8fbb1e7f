"""Pointed alphabets.

A letter is any hashable symbol; plain strings for sequence data, tuples of
strings for product alphabets (used by the mutation-span machinery).  The
basepoint is the "no letter here" symbol, serialized as '-' so that words
stay single-token on the command line.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Hashable

from .errors import ParseError, ValidationError

Letter = Hashable


@dataclass(frozen=True)
class Alphabet:
    letters: tuple[Letter, ...]
    basepoint: Letter = "-"

    def __post_init__(self) -> None:
        if len(set(self.letters)) != len(self.letters):
            raise ValidationError("alphabet letters must be pairwise distinct")
        if self.basepoint not in self.letters:
            raise ValidationError("alphabet must contain its basepoint")

    def __contains__(self, letter: Letter) -> bool:
        return letter in self.letters

    @property
    def nonbase(self) -> tuple[Letter, ...]:
        return tuple(x for x in self.letters if x != self.basepoint)


#: Default DNA alphabet {A, C, G, T} plus the basepoint.
DNA = Alphabet(("A", "C", "G", "T", "-"))

#: RNA alphabet, the transcription target.
RNA = Alphabet(("A", "C", "G", "U", "-"))


def parse_alphabet(text: str) -> Alphabet:
    """Parse ``alphabet A C G T ; basepoint -`` (basepoint clause optional)."""
    body = text.strip()
    if not body.startswith("alphabet"):
        raise ParseError("expected 'alphabet ...' declaration")
    body = body[len("alphabet"):]
    basepoint = "-"
    if ";" in body:
        body, _, bp_part = body.partition(";")
        bp_part = bp_part.strip()
        if not bp_part.startswith("basepoint"):
            raise ParseError("expected 'basepoint X' after ';' in alphabet")
        bp_tokens = bp_part[len("basepoint"):].split()
        if len(bp_tokens) != 1:
            raise ParseError("basepoint clause needs exactly one symbol")
        basepoint = bp_tokens[0]
    letters = tuple(body.split())
    if not letters:
        raise ParseError("alphabet declares no letters")
    if basepoint not in letters:
        letters = letters + (basepoint,)
    return Alphabet(letters, basepoint)


def product_alphabet(e: Alphabet, f: Alphabet) -> Alphabet:
    """E x F with tuple letters and componentwise basepoint."""
    letters = tuple((a, b) for a in e.letters for b in f.letters)
    return Alphabet(letters, (e.basepoint, f.basepoint))


def is_product(alphabet: Alphabet) -> bool:
    """True iff every letter is a pair and the basepoint is componentwise."""
    if not all(isinstance(x, tuple) and len(x) == 2 for x in alphabet.letters):
        return False
    bp = alphabet.basepoint
    return isinstance(bp, tuple) and len(bp) == 2
