"""Words of the free semigroup, their commutative images, and identities.

Letters are positive integers. ``Word`` keeps the letter sequence; ``ComWord``
keeps only the multiplicity (Parikh) vector and is the canonical form in every
commutative computation.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from itertools import groupby
from typing import Iterable, Mapping, NamedTuple, Union

from .errors import PreconditionError

LETTER_NAMES = "xyzqt" + "abcdefghijklmnoprsuvw"


def letter_name(i: int) -> str:
    if 1 <= i <= len(LETTER_NAMES):
        return LETTER_NAMES[i - 1]
    return f"x_{i}"


def _power_string(pairs) -> str:
    out = []
    for letter, e in pairs:
        out.append(letter_name(letter) if e == 1 else f"{letter_name(letter)}^{e}")
    return "".join(out)


@dataclass(frozen=True)
class Word:
    letters: tuple[int, ...]

    def __post_init__(self):
        letters = tuple(self.letters)
        if not letters:
            raise PreconditionError("empty word")
        if any(not isinstance(a, int) or a < 1 for a in letters):
            raise PreconditionError(f"letters must be positive integers: {letters}")
        object.__setattr__(self, "letters", letters)

    @classmethod
    def of(cls, *letters: int) -> Word:
        return cls(letters)

    @classmethod
    def power(cls, letter: int, e: int) -> Word:
        return cls((letter,) * e)

    def __len__(self) -> int:
        return len(self.letters)

    def __iter__(self):
        return iter(self.letters)

    def __getitem__(self, i):
        return self.letters[i]

    def __mul__(self, other: Word) -> Word:
        return Word(self.letters + other.letters)

    def __pow__(self, e: int) -> Word:
        if e < 1:
            raise PreconditionError("exponent must be positive")
        return Word(self.letters * e)

    @property
    def length(self) -> int:
        return len(self.letters)

    @property
    def content(self) -> frozenset[int]:
        return frozenset(self.letters)

    @property
    def head(self) -> int:
        return self.letters[0]

    @property
    def tail(self) -> int:
        return self.letters[-1]

    def count(self, letter: int) -> int:
        return self.letters.count(letter)

    @property
    def parikh(self) -> ComWord:
        return ComWord.from_counts(Counter(self.letters))

    def reversed(self) -> Word:
        return Word(self.letters[::-1])

    def rename(self, mapping: Mapping[int, int]) -> Word:
        return Word(tuple(mapping.get(a, a) for a in self.letters))

    def __str__(self) -> str:
        return _power_string((k, len(list(g))) for k, g in groupby(self.letters))


@dataclass(frozen=True)
class ComWord:
    """Multiplicity vector, stored as sorted ``(letter, count)`` pairs."""

    items: tuple[tuple[int, int], ...]

    def __post_init__(self):
        items = tuple(sorted((int(a), int(e)) for a, e in self.items))
        if not items:
            raise PreconditionError("empty commutative word")
        for a, e in items:
            if a < 1 or e < 1:
                raise PreconditionError(f"bad letter/multiplicity ({a}, {e})")
        if len({a for a, _ in items}) != len(items):
            raise PreconditionError("repeated letter in multiplicity vector")
        object.__setattr__(self, "items", items)

    @classmethod
    def from_counts(cls, counts: Mapping[int, int]) -> ComWord:
        return cls(tuple((a, e) for a, e in counts.items() if e))

    @classmethod
    def of(cls, **named: int) -> ComWord:
        """``ComWord.of(x=2, y=1)`` using the display names."""
        return cls(tuple((LETTER_NAMES.index(k) + 1, e) for k, e in named.items()))

    @property
    def counts(self) -> dict[int, int]:
        return dict(self.items)

    def count(self, letter: int) -> int:
        return self.counts.get(letter, 0)

    @property
    def length(self) -> int:
        return sum(e for _, e in self.items)

    @property
    def content(self) -> frozenset[int]:
        return frozenset(a for a, _ in self.items)

    @property
    def multiplicities(self) -> tuple[int, ...]:
        """Multiset of multiplicities, largest first."""
        return tuple(sorted((e for _, e in self.items), reverse=True))

    @property
    def parikh(self) -> ComWord:
        return self

    def __add__(self, other: ComWord) -> ComWord:
        c = Counter(self.counts)
        c.update(other.counts)
        return ComWord.from_counts(c)

    def scaled(self, k: int) -> ComWord:
        return ComWord(tuple((a, e * k) for a, e in self.items))

    def __le__(self, other: ComWord) -> bool:
        oc = other.counts
        return all(e <= oc.get(a, 0) for a, e in self.items)

    def __lt__(self, other: ComWord) -> bool:
        return self <= other and self != other

    def rename(self, mapping: Mapping[int, int]) -> ComWord:
        c: Counter = Counter()
        for a, e in self.items:
            c[mapping.get(a, a)] += e
        return ComWord.from_counts(c)

    def to_word(self) -> Word:
        return Word(tuple(a for a, e in self.items for _ in range(e)))

    def __str__(self) -> str:
        return _power_string(self.items)


AnyWord = Union[Word, ComWord]


def parikh(w: AnyWord) -> ComWord:
    return w.parikh


@dataclass(frozen=True)
class Equation:
    lhs: Word
    rhs: Word

    def letters(self) -> frozenset[int]:
        return self.lhs.content | self.rhs.content

    def __str__(self) -> str:
        return f"{self.lhs} = {self.rhs}"


@dataclass(frozen=True)
class ZeroReduced:
    """The identity ``w = 0``, shorthand for ``wz = zw = w`` with ``z`` fresh."""

    word: Word

    def letters(self) -> frozenset[int]:
        return self.word.content

    def expanded(self) -> tuple[Equation, Equation]:
        z = max(self.word.content) + 1
        zw = Word.of(z)
        return Equation(self.word * zw, self.word), Equation(zw * self.word, self.word)

    def __str__(self) -> str:
        return f"{self.word} = 0"


Identity = Union[Equation, ZeroReduced]

X, Y, Z = 1, 2, 3
COMMUTATIVE_LAW = Equation(Word.of(X, Y), Word.of(Y, X))


def _is_commutative_law(identity: Identity) -> bool:
    if not isinstance(identity, Equation):
        return False
    u, v = identity.lhs.letters, identity.rhs.letters
    return len(u) == 2 and u[0] != u[1] and v == u[::-1]


@dataclass(frozen=True)
class Basis:
    """A finite identity system. The empty basis presents all semigroups."""

    identities: tuple[Identity, ...]
    commutative: bool = False

    def __post_init__(self):
        ids = tuple(self.identities)
        for i in ids:
            if not isinstance(i, (Equation, ZeroReduced)):
                raise TypeError(f"not an identity: {i!r}")
        object.__setattr__(self, "identities", ids)
        if not self.commutative and any(_is_commutative_law(i) for i in ids):
            object.__setattr__(self, "commutative", True)

    @classmethod
    def of(cls, *identities: Identity, commutative: bool = False) -> Basis:
        return cls(tuple(identities), commutative)

    @classmethod
    def commutative_with(cls, *identities: Identity) -> Basis:
        ids = tuple(identities)
        if not any(_is_commutative_law(i) for i in ids):
            ids = (COMMUTATIVE_LAW,) + ids
        return cls(ids, True)

    def extended(self, *identities: Identity) -> Basis:
        return Basis(self.identities + tuple(identities), self.commutative)

    def __iter__(self):
        return iter(self.identities)

    def __len__(self):
        return len(self.identities)

    def max_letters(self) -> int:
        return max((len(i.letters()) for i in self.identities), default=0)

    def __str__(self) -> str:
        return "{" + ", ".join(str(i) for i in self.identities) + "}"


class Profile(NamedTuple):
    length: int
    content: frozenset
    head: int
    tail: int
    multiplicities: dict


def word_profile(w: Word) -> Profile:
    return Profile(w.length, w.content, w.head, w.tail, dict(Counter(w.letters)))


Substitution = Mapping[int, AnyWord]


def apply_substitution(w: AnyWord, sigma: Substitution) -> AnyWord:
    """Image of ``w`` under the endomorphism defined by ``sigma``.

    A ``Word`` is mapped positionally. A ``ComWord`` is mapped to the sum of the
    scaled Parikh images.
    """
    missing = w.content - set(sigma)
    if missing:
        raise PreconditionError(
            f"substitution incomplete: no image for {sorted(letter_name(a) for a in missing)}"
        )
    if isinstance(w, ComWord):
        total: Counter = Counter()
        for a, e in w.items:
            for b, f in sigma[a].parikh.items:
                total[b] += e * f
        return ComWord.from_counts(total)
    out: list[int] = []
    for a in w.letters:
        img = sigma[a]
        if isinstance(img, ComWord):
            img = img.to_word()
        out.extend(img.letters)
    return Word(tuple(out))


def sem_equivalent(u: Word, v: Word) -> dict[int, int] | None:
    """Letter bijection ``pi: c(v) -> c(u)`` with ``pi(v) == u`` positionwise."""
    if len(u) != len(v):
        return None
    fwd: dict[int, int] = {}
    back: dict[int, int] = {}
    for a, b in zip(v.letters, u.letters):
        if fwd.setdefault(a, b) != b or back.setdefault(b, a) != a:
            return None
    return fwd


def com_equivalent(u: AnyWord, v: AnyWord) -> dict[int, int] | None:
    """Letter bijection ``pi: c(v) -> c(u)`` mapping parikh(v) onto parikh(u)."""
    pu, pv = u.parikh, v.parikh
    if pu.multiplicities != pv.multiplicities:
        return None
    su = sorted(pu.items, key=lambda t: (t[1], t[0]))
    sv = sorted(pv.items, key=lambda t: (t[1], t[0]))
    return {b: a for (a, _), (b, _) in zip(su, sv)}


def is_stable(w: AnyWord, context: str = "COM") -> dict[int, int] | None:
    """A non-trivial letter permutation fixing ``w``, or None if ``w`` is unstable.

    In SEM no non-trivial permutation fixes a word positionwise, so the answer
    is always None there.
    """
    if context == "SEM":
        return None
    if context != "COM":
        raise PreconditionError(f"unknown context {context!r}")
    seen: dict[int, int] = {}
    for a, e in w.parikh.items:
        if e in seen:
            b = seen[e]
            perm = {c: c for c in w.content}
            perm[a], perm[b] = b, a
            return perm
        seen[e] = a
    return None


def _require_equation(identity: Identity) -> Equation:
    if not isinstance(identity, Equation):
        raise PreconditionError("not an equation")
    return identity


def is_balanced(identity: Identity) -> bool:
    eq = _require_equation(identity)
    return eq.lhs.parikh == eq.rhs.parikh


@dataclass(frozen=True)
class Renaming:
    mapping: dict
    sem: bool
    com: bool


def is_substitutive(identity: Identity) -> Renaming | None:
    """Bijection on c(u) turning u into v, positionwise if possible.

    ``sem`` reports whether the renaming works on the letter sequences,
    ``com`` whether it works on the Parikh vectors (always true when present).
    """
    eq = _require_equation(identity)
    u, v = eq.lhs, eq.rhs
    if u.content != v.content:
        return None
    positional = sem_equivalent(v, u)
    if positional is not None:
        return Renaming(positional, True, True)
    commutative = com_equivalent(v, u)
    if commutative is not None:
        return Renaming(commutative, False, True)
    return None


def _is_factor(small: tuple, big: tuple) -> bool:
    n, m = len(small), len(big)
    return any(big[i:i + n] == small for i in range(m - n + 1))


def nil_zero_consequences(identity: Identity, commutative: bool = False) -> frozenset:
    """One-step zero identities implied by ``identity`` in a nil variety.

    Contents differing gives both ``u = 0`` and ``v = 0``; a side occurring as a
    proper factor (proper Parikh divisor when commutative) of the other is zero.
    No closure is taken.
    """
    eq = _require_equation(identity)
    u, v = eq.lhs, eq.rhs
    out = set()
    if u.content != v.content:
        out.update((ZeroReduced(u), ZeroReduced(v)))
    for small, big in ((u, v), (v, u)):
        if commutative:
            if small.parikh < big.parikh:
                out.add(ZeroReduced(small))
        elif len(small) < len(big) and _is_factor(small.letters, big.letters):
            out.add(ZeroReduced(small))
    return frozenset(out)


def _collapse_exponents(eq: Equation) -> set[tuple[int, int]]:
    """Exponent pairs from mapping every letter into powers of one letter."""
    u, v = eq.lhs.parikh.counts, eq.rhs.parikh.counts
    lu, lv = sum(u.values()), sum(v.values())
    pairs = {(lu, lv)}
    for a in set(u) | set(v):
        p, q = u.get(a, 0), v.get(a, 0)
        if p != q:
            pairs.add((2 * lu - p, 2 * lv - q))
            pairs.add((lu + p, lv + q))
    return {(min(p, q), abs(p - q)) for p, q in pairs if p != q}


def periodicity_exponents(basis: Basis) -> tuple[int, int] | None:
    """A pair (a, b) such that ``x^a = x^(a+b)`` is derivable, or None.

    None means every member is balanced (so the variety contains COM when
    commutative). The lexicographically least pair over the collapse
    substitutions is returned.
    """
    found: set[tuple[int, int]] = set()
    for identity in basis:
        if isinstance(identity, ZeroReduced):
            found.add((identity.word.length, 1))
        elif not is_balanced(identity):
            found |= _collapse_exponents(identity)
    return min(found) if found else None


def letters_of(words: Iterable[AnyWord]) -> frozenset[int]:
    out: set[int] = set()
    for w in words:
        out |= w.content
    return frozenset(out)
