"""The recombination engine: joint saturation, congruence decisions, and
scheme validation.

A context fixes a finite wide chromology (every cone a discrete span whose
word span is Cartesian), an alphabet, a color, a target segment tau, and
optional user relations.  The congruence it generates on formal sums over
tau is decided by ``saturate``: the least fixpoint, above the input, of

* one closure rule per (cone, morphism from the cone's peak into tau):
  pull the support back along the word map, glue the maximal congruent sum
  at the peak (beta of pi), and push it forward again;
* one rule per extra relation (a, b): whenever one side's support is
  contained, add the other side.

Two sums are congruent iff their saturations coincide.  Soundness and
completeness of this procedure, and the single-leg-swap generator lemma the
brute-force oracle relies on, are written up in THEORY.md at the repo root;
both carry their own exhaustive cross-checks in the test suite.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from functools import lru_cache
from itertools import product as iproduct
from typing import Iterable, Mapping

from .alphabet import DNA, Alphabet, Letter
from .boolmod import BoolSum, ConeImage, WordUniverse, parse_sum, pi
from .chromology import Chromology, Cone, is_finite_wide, ConeClass, classify_cone
from .errors import ParseError, UniverseTooLarge, ValidationError
from .segment import Segment, SegMorphism, enumerate_morphisms, truncate

#: Seed for the sampled irreducibility checks (documented so that reported
#: results are reproducible; override via the ``seed`` parameter).
DEFAULT_SEED = 271828


@dataclass(frozen=True)
class RecombContext:
    """Everything the congruence engine needs, validated up front."""

    chromology: Chromology
    alphabet: Alphabet
    b: str
    tau: Segment
    extra_relations: tuple[tuple[BoolSum, BoolSum], ...] = ()
    morphism_cap: int = 100_000

    def __post_init__(self) -> None:
        if not is_finite_wide(self.chromology):
            raise ValidationError(
                "recombination contexts need a finite wide chromology "
                "(no diagram arrows)")
        if self.b not in self.chromology.omega:
            raise ValidationError(f"unknown color {self.b!r}")
        if self.tau.omega != self.chromology.omega:
            raise ValidationError(
                "tau lives over a different preorder than the chromology")
        for cone in self.chromology.cones:
            if classify_cone(cone, self.b) is not ConeClass.EXACTLY_DISTRIBUTIVE:
                raise ValidationError(
                    f"cone {cone.name} is not exactly {self.b}-distributive; "
                    "its word span is not Cartesian")
        universe = self.tau_universe
        for a, bb in self.extra_relations:
            if a.universe != universe or bb.universe != universe:
                raise ValidationError(
                    "extra relations must live on tau's word universe")

    @property
    def tau_universe(self) -> WordUniverse:
        return WordUniverse(self.tau, self.alphabet, self.b)

    def sum(self, literal: str) -> BoolSum:
        return parse_sum(literal, self.tau_universe)


# ---------------------------------------------------------------------------
# Closure rules
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class _ConeRule:
    """One (cone, morphism-into-tau) closure rule, reduced to tau offsets.

    ``legs`` lists, per cone leg, the 0-based offsets into Tr_b(tau) that the
    leg's truncation reaches through the morphism; ``dropped`` are the tau
    offsets outside the morphism's image (a sum member takes part only if it
    is the basepoint there).  Pulling back, gluing at the peak and pushing
    forward collapses to: collect each participating member's per-leg
    patterns, then emit every mix-and-match of those patterns.
    """

    width: int
    eps: Letter
    dropped: tuple[int, ...]
    legs: tuple[tuple[int, ...], ...]

    def apply(self, support: frozenset) -> frozenset:
        patterns: list[set] = [set() for _ in self.legs]
        for w in support:
            if any(w[o] != self.eps for o in self.dropped):
                continue
            for pats, offs in zip(patterns, self.legs):
                pats.add(tuple(w[o] for o in offs))
        if any(not pats for pats in patterns):
            return frozenset()
        out = set()
        for combo in iproduct(*(sorted(pats) for pats in patterns)):
            w = [self.eps] * self.width
            for offs, pat in zip(self.legs, combo):
                for o, letter in zip(offs, pat):
                    w[o] = letter
            out.add(tuple(w))
        return frozenset(out)


def _push_table(m: SegMorphism, b: str) -> tuple[int, tuple[tuple[int, int], ...]]:
    """(codomain truncation width, (dom offset, cod offset) pairs) for the
    word map of m; offsets index the sorted truncations."""
    dom_tr = truncate(m.dom, b)
    cod_tr = truncate(m.cod, b)
    cod_index = {x: o for o, x in enumerate(cod_tr)}
    pairs = []
    for o, i in enumerate(dom_tr):
        j = m.f1[i - 1]
        if j in cod_index:
            pairs.append((o, cod_index[j]))
    return len(cod_tr), tuple(pairs)


def _push(table, eps: Letter, letters: tuple) -> tuple:
    width, pairs = table
    out = [eps] * width
    for src, dst in pairs:
        out[dst] = letters[src]
    return tuple(out)


@lru_cache(maxsize=256)
def _context_rules(ctx: RecombContext) -> tuple[_ConeRule, ...]:
    rules = []
    width = ctx.tau_universe.width
    eps = ctx.alphabet.basepoint
    for cone in ctx.chromology.cones:
        ci = ConeImage(cone, ctx.alphabet, ctx.b)
        for m in enumerate_morphisms(cone.peak, ctx.tau, cap=ctx.morphism_cap):
            _, pairs = _push_table(m, ctx.b)
            dst_of = dict(pairs)
            leg_offsets = []
            for k in range(1, cone.n_legs + 1):
                offs = tuple(dst_of[o] for o in ci.leg_index_table(k)
                             if o in dst_of)
                leg_offsets.append(offs)
            mapped = {dst for _, dst in pairs}
            dropped = tuple(o for o in range(width) if o not in mapped)
            rules.append(_ConeRule(width, eps, dropped, tuple(leg_offsets)))
    return tuple(rules)


def saturate(ctx: RecombContext, x: BoolSum) -> BoolSum:
    """The maximum of x's congruence class: x closed under every rule."""
    if x.universe != ctx.tau_universe:
        raise ValidationError("sum does not live on the context's universe")
    rules = _context_rules(ctx)
    support = set(x.support)
    changed = True
    while changed:
        changed = False
        for rule in rules:
            new = rule.apply(frozenset(support))
            if not new <= support:
                support |= new
                changed = True
        for a, b in ctx.extra_relations:
            if a.support <= support and not b.support <= support:
                support |= b.support
                changed = True
            if b.support <= support and not a.support <= support:
                support |= a.support
                changed = True
    return BoolSum(ctx.tau_universe, frozenset(support))


def equivalent(ctx: RecombContext, x: BoolSum, y: BoolSum) -> bool:
    """Equality in the quotient semimodule: equal saturations."""
    return saturate(ctx, x) == saturate(ctx, y)


# ---------------------------------------------------------------------------
# Irreducibility and schemes
# ---------------------------------------------------------------------------

def check_irreducible(ch: Chromology, alphabet: Alphabet, b: str, s: Segment,
                      *, morphism_cap: int = 100_000,
                      exhaustive_limit: int = 1 << 18,
                      samples: int = 250,
                      seed: int = DEFAULT_SEED) -> bool:
    """Whether every morphism into s collapses each cone congruence.

    Decided on generators: for every cone, every enumerated morphism
    f: peak -> s, every word pair (u, v) at the peak and every single-leg
    swap (u', v') of that pair, the pushed pair {f(u), f(v)} must equal
    {f(u'), f(v')}.  Pairs are enumerated exhaustively when the alphabet has
    at most two letters and the pair count stays under ``exhaustive_limit``;
    otherwise ``samples`` random pairs are drawn from a seeded generator.
    """
    if not is_finite_wide(ch):
        raise ValidationError("irreducibility checks need a wide chromology")
    eps = alphabet.basepoint
    for cone in ch.cones:
        ci = ConeImage(cone, alphabet, b)
        peak_u = ci.peak_universe
        leg_tables = [ci.leg_index_table(k)
                      for k in range(1, cone.n_legs + 1)]
        for m in enumerate_morphisms(cone.peak, s, cap=morphism_cap):
            table = _push_table(m, b)
            n_words = peak_u.size()
            exhaustive = (len(alphabet.letters) <= 2
                          and n_words * n_words <= exhaustive_limit)
            if exhaustive:
                pairs = iproduct(peak_u.all_letter_tuples(),
                                 peak_u.all_letter_tuples())
            else:
                rng = random.Random(seed)
                pairs = (tuple(
                    tuple(rng.choice(alphabet.letters)
                          for _ in range(peak_u.width))
                    for _ in range(2)) for _ in range(samples))
            for u, v in pairs:
                pushed = sorted((_push(table, eps, u), _push(table, eps, v)))
                for offs in leg_tables:
                    u2, v2 = list(u), list(v)
                    for o in offs:
                        u2[o], v2[o] = v[o], u[o]
                    swapped = sorted((_push(table, eps, tuple(u2)),
                                      _push(table, eps, tuple(v2))))
                    if pushed != swapped:
                        return False
    return True


@dataclass(frozen=True)
class SchemeReport:
    passed: bool
    failures: tuple[str, ...]


def check_scheme(ch: Chromology, alphabet: Alphabet = DNA, b: str = "1",
                 **kwargs) -> SchemeReport:
    """Check that every leg of every cone is irreducible."""
    failures = []
    for cone in ch.cones:
        for k in range(1, cone.n_legs + 1):
            leg = cone.leg_segment(k)
            if not check_irreducible(ch, alphabet, b, leg, **kwargs):
                failures.append(f"cone {cone.name} leg {k} ({leg})")
    return SchemeReport(not failures, tuple(failures))


# ---------------------------------------------------------------------------
# Desk-scale verification
# ---------------------------------------------------------------------------

def _all_sums(universe: WordUniverse, limit: int) -> list[BoolSum]:
    n_words = universe.size()
    if n_words > 62 or 2 ** n_words > limit:
        raise UniverseTooLarge(
            f"universe of {n_words} words has too many sums to enumerate")
    words = sorted(universe.all_letter_tuples())
    sums = []
    for mask in range(2 ** n_words):
        sums.append(BoolSum(universe, frozenset(
            w for i, w in enumerate(words) if mask >> i & 1)))
    return sums


def verify_wmon(ctx: RecombContext, rho: Cone, *,
                sums_limit: int = 1 << 16) -> bool:
    """Whether classes at rho's peak embed into the product of leg classes.

    Enumerates every sum on tau (= the peak), keys its class by the
    saturation's canonical form, restricts along each leg and keys those by
    leg-context saturations.  True iff class -> (leg classes) is a
    well-defined injection.
    """
    if rho.peak != ctx.tau:
        raise ValidationError("verify_wmon needs tau to be the cone's peak")
    ci = ConeImage(rho, ctx.alphabet, ctx.b)
    leg_ctxs = [RecombContext(ctx.chromology, ctx.alphabet, ctx.b,
                              rho.leg_segment(k), (), ctx.morphism_cap)
                for k in range(1, rho.n_legs + 1)]
    by_class: dict = {}
    seen_images: dict = {}
    for x in _all_sums(ctx.tau_universe, sums_limit):
        key = saturate(ctx, x).canonical()
        image = tuple(
            saturate(leg_ctxs[k], comp).canonical()
            for k, comp in enumerate(pi(ci, x)))
        if key in by_class:
            if by_class[key] != image:
                return False  # the induced map is not even well defined
            continue
        by_class[key] = image
        if image in seen_images and seen_images[image] != key:
            return False
        seen_images[image] = key
    return True


# ---------------------------------------------------------------------------
# Brute-force oracle
# ---------------------------------------------------------------------------

@dataclass
class OraclePartition:
    """The full congruence partition of all sums on a small universe."""

    universe: WordUniverse
    words: tuple
    _parent: list[int]

    def _find(self, a: int) -> int:
        while self._parent[a] != a:
            self._parent[a] = self._parent[self._parent[a]]
            a = self._parent[a]
        return a

    def mask_of(self, x: BoolSum) -> int:
        index = {w: i for i, w in enumerate(self.words)}
        mask = 0
        for w in x.support:
            mask |= 1 << index[w]
        return mask

    def sum_of(self, mask: int) -> BoolSum:
        return BoolSum(self.universe, frozenset(
            w for i, w in enumerate(self.words) if mask >> i & 1))

    def same_class(self, x: BoolSum, y: BoolSum) -> bool:
        return self._find(self.mask_of(x)) == self._find(self.mask_of(y))

    def blocks(self) -> tuple[tuple[int, ...], ...]:
        grouped: dict[int, list[int]] = {}
        for mask in range(len(self._parent)):
            grouped.setdefault(self._find(mask), []).append(mask)
        return tuple(tuple(v) for _, v in sorted(grouped.items()))


def oracle_congruence(ctx: RecombContext, *,
                      word_limit: int = 8,
                      pair_limit: int = 1 << 16) -> OraclePartition:
    """Close the generated congruence by union-find over all sums.

    Independent of ``saturate`` by design: sums are bitmasks, generator
    pairs are pushed-forward single-leg swaps plus the extra relations, and
    closure under addition is run to a fixpoint with a worklist (every fresh
    merge (x, y) enqueues the merges (x+z, y+z) for all z).
    """
    universe = ctx.tau_universe
    n_words = universe.size()
    if n_words > word_limit:
        raise UniverseTooLarge(
            f"oracle restricted to at most {word_limit} words "
            f"(got {n_words})")
    words = tuple(sorted(universe.all_letter_tuples()))
    index = {w: i for i, w in enumerate(words)}
    eps = ctx.alphabet.basepoint

    generators: list[tuple[int, int]] = []
    for cone in ctx.chromology.cones:
        ci = ConeImage(cone, ctx.alphabet, ctx.b)
        peak_u = ci.peak_universe
        if peak_u.size() ** 2 > pair_limit:
            raise UniverseTooLarge(
                f"cone {cone.name}: too many word pairs at the peak")
        leg_tables = [ci.leg_index_table(k)
                      for k in range(1, cone.n_legs + 1)]
        peak_words = list(peak_u.all_letter_tuples())
        for m in enumerate_morphisms(cone.peak, ctx.tau,
                                     cap=ctx.morphism_cap):
            table = _push_table(m, ctx.b)
            for u in peak_words:
                for v in peak_words:
                    left = (1 << index[_push(table, eps, u)]
                            | 1 << index[_push(table, eps, v)])
                    for offs in leg_tables:
                        u2, v2 = list(u), list(v)
                        for o in offs:
                            u2[o], v2[o] = v[o], u[o]
                        right = (1 << index[_push(table, eps, tuple(u2))]
                                 | 1 << index[_push(table, eps, tuple(v2))])
                        if left != right:
                            generators.append((left, right))
    for a, b in ctx.extra_relations:
        generators.append((_mask(a, index), _mask(b, index)))

    n_sums = 2 ** n_words
    parent = list(range(n_sums))

    def find(a: int) -> int:
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    work: list[tuple[int, int]] = []

    def union(a: int, b_: int) -> None:
        ra, rb = find(a), find(b_)
        if ra == rb:
            return
        if rb < ra:
            ra, rb = rb, ra
        parent[rb] = ra
        work.append((a, b_))

    for left, right in generators:
        union(left, right)
    while work:
        x, y = work.pop()
        for z in range(n_sums):
            union(x | z, y | z)
    return OraclePartition(universe, words, parent)


def _mask(x: BoolSum, index: Mapping) -> int:
    mask = 0
    for w in x.support:
        mask |= 1 << index[w]
    return mask


def factor_through(ctx: RecombContext,
                   target_relations: Iterable[tuple[BoolSum, BoolSum]],
                   sample: Iterable[BoolSum]) -> bool:
    """Whether the context's congruence refines the target congruence on the
    sample: every pair equivalent here must also be identified by the
    congruence generated by ``target_relations`` alone."""
    universe = ctx.tau_universe
    sums = list(sample)
    for x in sums:
        if x.universe != universe:
            raise ValidationError("sample sum off the context's carrier")
    target_ctx = RecombContext(
        Chromology(ctx.chromology.omega, ()), ctx.alphabet, ctx.b, ctx.tau,
        tuple(target_relations), ctx.morphism_cap)
    for i, x in enumerate(sums):
        for y in sums[i + 1:]:
            if equivalent(ctx, x, y) and not equivalent(target_ctx, x, y):
                return False
    return True


def dx_map(src: RecombContext, dst: RecombContext, g: SegMorphism,
           x: BoolSum) -> BoolSum:
    """The induced map between quotients along g: saturate, push, saturate."""
    if g.dom != src.tau or g.cod != dst.tau:
        raise ValidationError("morphism endpoints do not match the contexts")
    table = _push_table(g, src.b)
    eps = src.alphabet.basepoint
    pushed = frozenset(_push(table, eps, w)
                       for w in saturate(src, x).support)
    return saturate(dst, BoolSum(dst.tau_universe, pushed))


# ---------------------------------------------------------------------------
# Mutation rules (presentable quotient generators)
# ---------------------------------------------------------------------------

def apply_mutation_rules(rules: Mapping[Letter, Iterable[Letter]],
                         x: BoolSum) -> BoolSum:
    """Send each word X1..Xn to the sum over Supp(rules(X1)) x ... x
    Supp(rules(Xn)); extend additively.  A letter mapped to the empty sum
    annihilates every word containing it."""
    eps = x.universe.alphabet.basepoint
    table: dict[Letter, tuple] = {}
    for letter, image in rules.items():
        table[letter] = tuple(image)
    if eps not in table:
        table[eps] = (eps,)
    elif tuple(table[eps]) != (eps,):
        raise ValidationError("mutation rules must fix the basepoint")
    support = set()
    for w in x.support:
        choices = []
        for letter in w:
            if letter not in table:
                raise ValidationError(f"no mutation rule for letter {letter!r}")
            choices.append(table[letter])
        for combo in iproduct(*choices):
            support.add(tuple(combo))
    return BoolSum(x.universe, frozenset(support))


# ---------------------------------------------------------------------------
# File formats
# ---------------------------------------------------------------------------

def parse_relations(text: str, universe: WordUniverse,
                    ) -> tuple[tuple[BoolSum, BoolSum], ...]:
    """Parse a relations file: lines ``rel: SUM == SUM``, '#' comments."""
    out = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if not line.startswith("rel:"):
            raise ParseError(f"unrecognized line {line!r}", line=lineno)
        body = line[len("rel:"):]
        if "==" not in body:
            raise ParseError("relation needs 'SUM == SUM'", line=lineno)
        lhs, _, rhs = body.partition("==")
        try:
            out.append((parse_sum(lhs, universe), parse_sum(rhs, universe)))
        except ParseError as exc:
            raise ParseError(exc.message, line=lineno) from None
    return tuple(out)


def parse_mutation_rules(text: str, alphabet: Alphabet = DNA,
                         ) -> dict[Letter, tuple[Letter, ...]]:
    """Parse a rules file: lines ``X -> L1+L2+...`` (``0`` = empty sum)."""
    rules: dict[Letter, tuple[Letter, ...]] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "->" not in line:
            raise ParseError("rule needs 'X -> SUM'", line=lineno)
        lhs, _, rhs = line.partition("->")
        letter = lhs.strip()
        if letter not in alphabet:
            raise ParseError(f"unknown letter {letter!r}", line=lineno)
        if letter in rules:
            raise ParseError(f"duplicate rule for {letter!r}", line=lineno)
        rhs = rhs.strip()
        if rhs == "0":
            rules[letter] = ()
            continue
        image = []
        for tok in rhs.split("+"):
            tok = tok.strip()
            if tok not in alphabet:
                raise ParseError(f"unknown letter {tok!r}", line=lineno)
            image.append(tok)
        rules[letter] = tuple(image)
    return rules
