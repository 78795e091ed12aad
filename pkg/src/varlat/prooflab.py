"""Bounded materializations of the word constructions used in the proofs.

Nothing here proves anything about infinite free objects: the audits quantify
over a bounded universe of commutative words and are sound probes only.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations, permutations, product

from . import known
from .errors import PreconditionError
from .relfree import build_relfree, holds
from .syntax import (
    AnyWord,
    Basis,
    ComWord,
    Equation,
    Word,
    com_equivalent,
    is_balanced,
    is_stable,
    periodicity_exponents,
    sem_equivalent,
)

X, Y, Z, Q = 1, 2, 3, 4


def _w(*parts: tuple[int, int]) -> Word:
    letters: list[int] = []
    for a, e in parts:
        letters.extend([a] * e)
    return Word(tuple(letters))


def erase_letters(w: Word, letters) -> Word | None:
    """Substitute the empty word for ``letters``; None stands for the empty word.

    Only meaningful for monoids, where 1 may be substituted.
    """
    kept = tuple(a for a in w.letters if a not in set(letters))
    return Word(kept) if kept else None


@dataclass
class WordFamily:
    u: AnyWord
    v: AnyWord
    s: AnyWord
    t: AnyWord
    checks: dict[str, bool] = field(default_factory=dict)
    notes: list[str] = field(default_factory=list)

    @property
    def words(self):
        return (self.u, self.v, self.s, self.t)

    @property
    def passed(self) -> bool:
        return all(self.checks.values())

    def identity(self) -> Equation:
        """The identity u = s the construction is aiming at."""
        return Equation(_as_word(self.u), _as_word(self.s))


def _as_word(w: AnyWord) -> Word:
    return w if isinstance(w, Word) else w.to_word()


def _separated(w1: AnyWord, w2: AnyWord) -> bool:
    m1, m2 = w1.parikh.multiplicities, w2.parikh.multiplicities
    return max(m1) != max(m2) or min(m1) != min(m2)


def proposition_words(n: int, m: int, variant: str = "main") -> WordFamily:
    """The four words built from a periodicity law x^n = x^(n+m)."""
    if n < 2 or m < 1:
        raise PreconditionError("parameters must satisfy n > 1 and m >= 1")
    if variant == "main":
        fam = WordFamily(
            _w((X, 1), (Y, n + 4 * m + 3), (Z, n), (Q, 1)),
            _w((X, 1), (Y, n + 2 * m + 3), (Z, n + 2 * m), (Q, 1)),
            _w((Q, 1), (Y, n + 4 * m + 2), (Z, n + 1), (X, 1)),
            _w((Q, 1), (Y, n + 2 * m + 2), (Z, n + 2 * m + 1), (X, 1)),
        )
    elif variant == "primed":
        fam = WordFamily(
            _w((X, n + 2 * m + 4), (Y, n + 2), (Z, 1)),
            _w((X, n + m + 4), (Y, n + m + 2), (Z, 1)),
            _w((X, n + 2 * m + 3), (Y, n + 2), (Z, 2)),
            _w((X, n + m + 3), (Y, n + m + 2), (Z, 2)),
        )
    else:
        raise PreconditionError(f"unknown variant {variant!r}")
    words = fam.words
    c = fam.checks
    c["same_length"] = len({w.length for w in words}) == 1
    c["same_content"] = len({w.content for w in words}) == 1
    c["pairwise_non_equivalent"] = all(
        com_equivalent(a, b) is None for a, b in combinations(words, 2))
    if variant == "main":
        c["max_multiplicity_separates"] = all(
            max(a.parikh.multiplicities) != max(b.parikh.multiplicities)
            for a, b in combinations(words, 2))
        eq = fam.identity()
        for K in (known.LZ, known.RZ, known.P, known.PDUAL):
            c[f"u=s fails in {K}"] = not known.holds_in(eq, K)
        stable = [w for w in words if is_stable(w, "COM") is not None]
        fam.notes.append(f"{len(stable)} of 4 words are COM-stable (x and q both occur once)")
        erased = (erase_letters(eq.lhs, (Y, Z)), erase_letters(eq.rhs, (Y, Z)))
        fam.notes.append(f"monoid context, y,z := 1: {erased[0]} = {erased[1]}")
    else:
        c["max_or_min_multiplicity_separates"] = all(
            _separated(a, b) for a, b in combinations(words, 2))
        c["all_COM_unstable"] = all(is_stable(w, "COM") is None for w in words)
        c["x>y>z multiplicities"] = all(w.count(X) > w.count(Y) > w.count(Z) for w in words)
        eq = fam.identity()
        erased = (erase_letters(eq.lhs, (X, Y)), erase_letters(eq.rhs, (X, Y)))
        fam.notes.append(f"monoid context, x,y := 1: {erased[0]} = {erased[1]}")
    return fam


def corollary_words(w1: Word, w2: Word) -> tuple[WordFamily, int]:
    """Words x^2 w1, x^2 w2, xy w1, xy w2 from a balanced identity w1 = w2.

    x and y are the letters at the first position where w1 and w2 differ;
    that position (1-based) is returned alongside the family.
    """
    if w1 == w2:
        raise PreconditionError("identity is trivial")
    if not is_balanced(Equation(w1, w2)):
        raise PreconditionError("identity is not balanced")
    i = next(j for j, (a, b) in enumerate(zip(w1.letters, w2.letters)) if a != b)
    x, y = w1[i], w2[i]
    fam = WordFamily(Word.of(x, x) * w1, Word.of(x, x) * w2, Word.of(x, y) * w1, Word.of(x, y) * w2)
    c = fam.checks
    c["pairwise_SEM_non_equivalent"] = all(
        sem_equivalent(a, b) is None for a, b in combinations(fam.words, 2))
    c["u=s not balanced"] = not is_balanced(fam.identity())
    c["x count differs by one"] = fam.u.count(x) == fam.s.count(x) + 1
    fam.notes.append(f"x := {Word.of(x)}, y := {Word.of(y)}")
    if not c["u=s not balanced"]:
        raise AssertionError("corollary construction produced a balanced identity")
    return fam, i + 1


# gamma partition

Vec = tuple[int, ...]


def _vectors(r: int, max_len: int, min_len: int = 1):
    for total in range(min_len, max_len + 1):
        for cut in combinations(range(total + r - 1), r - 1):
            bounds = (-1,) + cut + (total + r - 1,)
            yield tuple(bounds[i + 1] - bounds[i] - 1 for i in range(r))


def _substitute(w: Vec, sigma: dict[int, Vec]) -> Vec:
    out = [0] * len(w)
    for a, e in enumerate(w):
        if e:
            for b, f in enumerate(sigma[a]):
                out[b] += e * f
    return tuple(out)


def _substitutions(w: Vec, r: int, budget: int):
    """Images of the letters of w (as vectors) keeping the image length within budget."""
    letters = [a for a in range(r) if w[a]]

    def rec(i: int, left: int, acc: dict):
        if i == len(letters):
            yield dict(acc)
            return
        a = letters[i]
        rest = sum(w[b] for b in letters[i + 1:])
        for img in _vectors(r, (left - rest) // w[a]):
            acc[a] = img
            yield from rec(i + 1, left - w[a] * sum(img), acc)
        acc.pop(a, None)

    yield from rec(0, budget, {})


@dataclass
class GammaPartition:
    bound: int
    length: int
    alphabet: tuple[int, ...]
    sink: frozenset[Vec]
    pairs: list[frozenset[Vec]]
    audits: dict[str, bool] = field(default_factory=dict)
    failures: list[str] = field(default_factory=list)

    def class_of(self, w: Vec):
        if w in self.sink:
            return "sink"
        for i, p in enumerate(self.pairs):
            if w in p:
                return i
        return w

    def word(self, w: Vec) -> ComWord:
        return ComWord(tuple((self.alphabet[i], e) for i, e in enumerate(w) if e))

    @property
    def passed(self) -> bool:
        return all(self.audits.values())


def gamma_partition(U: AnyWord, S: AnyWord, L: int) -> GammaPartition:
    """The partition with sink class and orbit pairs {ξ(U), ξ(S)}, with bounded audits."""
    pu, ps = U.parikh, S.parikh
    if pu.length != ps.length:
        raise PreconditionError("inputs differ in length")
    if pu.content != ps.content:
        raise PreconditionError("inputs differ in content")
    if com_equivalent(pu, ps) is not None:
        raise PreconditionError("inputs equivalent (multiplicity multisets equal)")
    for w in (pu, ps):
        if is_stable(w, "COM") is not None:
            raise PreconditionError(f"{w} is COM-stable")
    ell = pu.length
    if L < ell + 1:
        raise PreconditionError(f"bound must be at least {ell + 1}")
    content = sorted(pu.content)
    fresh = max(content) + 1
    alphabet = tuple(content) + (fresh,)
    r = len(alphabet)
    c = len(content)

    def vec(w: ComWord) -> Vec:
        return tuple(w.count(a) for a in alphabet)

    universe = list(_vectors(r, L))
    in_universe = set(universe)
    sink = frozenset(w for w in universe
                     if sum(w) > ell or (sum(w) == ell and sum(1 for e in w if e) < c))
    gp = GammaPartition(L, ell, alphabet, sink, [])
    owner: dict[Vec, int] = {}
    vu, vs = vec(pu), vec(ps)
    disjoint = True
    for perm in permutations(range(r)):
        pair = frozenset({tuple(vu[perm[i]] for i in range(r)), tuple(vs[perm[i]] for i in range(r))})
        if pair in gp.pairs:
            continue
        for w in pair:
            if w in owner:
                disjoint = False
                gp.failures.append(f"{gp.word(w)} lies in two pair classes")
            owner[w] = len(gp.pairs)
        gp.pairs.append(pair)
    gp.audits["classes_disjoint"] = disjoint

    def cls(w):
        if w in sink:
            return "sink"
        return owner.get(w, w)

    # related pairs: within the sink, and within each pair class
    groups = [sorted(sink)] + [sorted(p) for p in gp.pairs]

    ok = True
    units = [tuple(int(i == j) for i in range(r)) for j in range(r)]
    for group in groups:
        for w1, w2 in combinations(group, 2):
            if sum(w1) > L - 1 or sum(w2) > L - 1:
                continue
            for g in units:
                a = tuple(p + q for p, q in zip(w1, g))
                b = tuple(p + q for p, q in zip(w2, g))
                if cls(a) != cls(b):
                    ok = False
                    gp.failures.append(f"{gp.word(w1)}·{gp.word(g)} and {gp.word(w2)}·{gp.word(g)} split")
    gp.audits["restricted_congruence"] = ok

    ok = True
    # the sink is a single class: each member must map back into it
    for w in sink:
        for sigma in _substitutions(w, r, L):
            img = _substitute(w, sigma)
            if img in in_universe and img not in sink:
                ok = False
                gp.failures.append(f"an endomorphism moves {gp.word(w)} out of the sink")
                break
    for pair in gp.pairs:
        w1, w2 = sorted(pair)
        # both words share their content, so sigma is defined on all of w2
        for sigma in _substitutions(w1, r, L):
            i1, i2 = _substitute(w1, sigma), _substitute(w2, sigma)
            if i1 not in in_universe or i2 not in in_universe:
                continue
            if cls(i1) != cls(i2):
                ok = False
                gp.failures.append(f"an endomorphism splits {gp.word(w1)} and {gp.word(w2)}")
    gp.audits["restricted_endomorphism_stability"] = ok
    gp.audits["pairs_avoid_sink"] = all(not (p & sink) for p in gp.pairs)
    covered = set(sink) | set(owner)
    gp.audits["covers_universe"] = covered <= in_universe
    return gp


# key lemma probe

@dataclass
class KeyLemmaResult:
    holds: bool
    identity: Equation

    def __bool__(self):
        return self.holds


def _quadruple_problems(words) -> list[str]:
    problems = []
    if len({w.length for w in words}) != 1:
        problems.append("words differ in length")
    if len({w.content for w in words}) != 1:
        problems.append("words differ in content")
    for a, b in combinations(words, 2):
        if com_equivalent(a, b) is not None:
            problems.append(f"{a} and {b} are COM-equivalent")
    for w in words:
        if is_stable(w, "COM") is not None:
            problems.append(f"{w} is COM-stable")
    return problems


def key_lemma_instance(u: AnyWord, v: AnyWord, s: AnyWord, t: AnyWord, basis: Basis) -> KeyLemmaResult:
    """Whether var(basis) satisfies u = s, given it satisfies u = v and s = t.

    A False result is evidence that the variety is neither modular nor
    lower-modular in Com.
    """
    words = tuple(_as_word(w) for w in (u, v, s, t))
    problems = _quadruple_problems(words)
    if not basis.commutative:
        problems.append("basis is not commutative")
    elif periodicity_exponents(basis) is None:
        problems.append("basis is not periodic")
    else:
        for a, b in ((0, 1), (2, 3)):
            if not holds(basis, Equation(words[a], words[b])):
                problems.append(f"{words[a]} = {words[b]} fails in the variety")
    if problems:
        raise PreconditionError("; ".join(problems))
    eq = Equation(words[0], words[2])
    return KeyLemmaResult(holds(basis, eq), eq)


@dataclass
class QuadrupleSearch:
    examined: int
    admissible: int
    falsifying: list[tuple[ComWord, ComWord, ComWord, ComWord]]


def search_quadruples(basis: Basis, max_length: int, max_letters: int = 3) -> QuadrupleSearch:
    """Admissible quadruples up to ``max_length`` and the ones where u = s fails."""
    examined = admissible = 0
    falsifying = []
    for r in range(1, max_letters + 1):
        F = build_relfree(basis, r)
        for ell in range(r, max_length + 1):
            # unstable full-content words, grouped by multiplicity multiset
            classes: dict[tuple, list[ComWord]] = {}
            for vec in _vectors(r, ell, ell):
                if 0 in vec or len(set(vec)) < r:
                    continue
                w = ComWord(tuple((i + 1, e) for i, e in enumerate(vec)))
                classes.setdefault(w.multiplicities, []).append(w)
            keys = sorted(classes)
            for chosen in combinations(keys, 4):
                for combo in product(*(classes[k] for k in chosen)):
                    for u, v, s, t in _orderings(combo):
                        examined += 1
                        if F.same(u, v) and F.same(s, t):
                            admissible += 1
                            if not F.same(u, s):
                                falsifying.append((u, v, s, t))
    return QuadrupleSearch(examined, admissible, falsifying)


def _orderings(combo):
    # u=v, s=t, u=s depend only on how the four words split into two pairs
    a, b, c, d = combo
    for pair in (((a, b), (c, d)), ((a, c), (b, d)), ((a, d), (b, c))):
        (u, v), (s, t) = pair
        yield u, v, s, t
