"""Consequences of 0-reduced identities in the presence of commutativity.

``v = 0`` follows from ``{xy = yx, u = 0}`` exactly when some endomorphic
image of ``u`` divides ``v`` in the free commutative semigroup. The search
below looks for the images letter by letter.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Iterable

from .syntax import (
    AnyWord,
    ComWord,
    Identity,
    ZeroReduced,
    apply_substitution,
    com_equivalent,
    is_balanced,
)


@dataclass(frozen=True)
class ConsequenceWitness:
    sigma: dict
    remainder: ComWord | None

    def balances(self, u: AnyWord, v: AnyWord) -> bool:
        image = apply_substitution(u.parikh, self.sigma)
        total = image if self.remainder is None else image + self.remainder
        return total == v.parikh


@dataclass(frozen=True)
class ZeroSystem:
    """``{xy = yx} ∪ {w = 0 : w in generators}``."""

    generators: tuple[ComWord, ...]

    def __post_init__(self):
        object.__setattr__(self, "generators", tuple(g.parikh for g in self.generators))

    def identities(self) -> list[ZeroReduced]:
        return [ZeroReduced(g.to_word()) for g in self.generators]

    def __str__(self):
        return "{" + ", ".join(f"{g} = 0" for g in self.generators) + "}"


def zero_consequence_com(u: AnyWord, v: AnyWord) -> ConsequenceWitness | None:
    """First witness (lexicographic DFS) that ``v = 0`` follows from ``u = 0``."""
    pu, pv = u.parikh, v.parikh
    letters = [a for a, _ in pu.items]
    exps = [e for _, e in pu.items]
    targets = [b for b, _ in pv.items]
    cap0 = tuple(f for _, f in pv.items)
    # each letter of u needs at least one letter of v per occurrence
    need = [sum(exps[i:]) for i in range(len(exps))] + [0]
    dead: set[tuple[int, tuple]] = set()

    def search(i: int, cap: tuple) -> list | None:
        if i == len(letters):
            return []
        if sum(cap) < need[i] or (i, cap) in dead:
            return None
        e = exps[i]
        bounds = [c // e for c in cap]
        for m in product(*(range(b + 1) for b in bounds)):
            if not any(m):
                continue
            rest = search(i + 1, tuple(c - e * k for c, k in zip(cap, m)))
            if rest is not None:
                return [m] + rest
        dead.add((i, cap))
        return None

    found = search(0, cap0)
    if found is None:
        return None
    sigma = {
        a: ComWord(tuple((b, k) for b, k in zip(targets, m) if k))
        for a, m in zip(letters, found)
    }
    left = list(cap0)
    for e, m in zip(exps, found):
        left = [c - e * k for c, k in zip(left, m)]
    remainder = ComWord(tuple((b, c) for b, c in zip(targets, left) if c)) if any(left) else None
    return ConsequenceWitness(sigma, remainder)


def systems_equivalent(u: AnyWord, v: AnyWord) -> bool:
    return zero_consequence_com(u, v) is not None and zero_consequence_com(v, u) is not None


def is_zero_in(system: ZeroSystem | Iterable[AnyWord], w: AnyWord) -> bool:
    gens = system.generators if isinstance(system, ZeroSystem) else system
    return any(zero_consequence_com(g, w) is not None for g in gens)


def holds_in_zero_system(system: ZeroSystem, identity: Identity) -> bool:
    if isinstance(identity, ZeroReduced):
        return is_zero_in(system, identity.word)
    if is_balanced(identity):
        return True
    return is_zero_in(system, identity.lhs) and is_zero_in(system, identity.rhs)


def minimal_generators(words: Iterable[AnyWord]) -> list[ComWord]:
    """Drop words that are zero consequences of another, keeping one per class."""
    pool: list[ComWord] = []
    for w in sorted({w.parikh for w in words}, key=lambda c: (c.length, c.items)):
        if not any(com_equivalent(w, p) is not None for p in pool):
            pool.append(w)
    keep = []
    for w in pool:
        if not any(p != w and zero_consequence_com(p, w) is not None for p in pool):
            keep.append(w)
    return keep

