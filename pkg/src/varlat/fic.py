"""Finite semigroups and their lattices of fully invariant congruences.

Results here are a finite-scale analogue only: the lattice of fully invariant
congruences of a k-generated relatively free object need not reflect any
interval of Com faithfully.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Sequence

import numpy as np

from .errors import ParseError, PreconditionError, ResourceLimitError
from .lattice import FiniteLattice
from .partition import Partition, UnionFind
from .relfree import FreeObject

SIZE_CAP = 12
ENDOMORPHISM_CAP = 10**6


class FiniteSemigroup:
    def __init__(self, table, names: Sequence[str] | None = None,
                 generators: Sequence[int] | None = None):
        T = np.asarray(table, dtype=np.intp)
        if T.ndim != 2 or T.shape[0] != T.shape[1] or T.shape[0] == 0:
            raise PreconditionError("Cayley table must be a non-empty square matrix")
        n = T.shape[0]
        if T.min() < 0 or T.max() >= n:
            raise PreconditionError("Cayley table entries out of range")
        lhs = T[T]  # (ab)c
        rhs = T[np.arange(n)[:, None, None], T[None, :, :]]  # a(bc)
        if not np.array_equal(lhs, rhs):
            a, b, c = map(int, np.argwhere(lhs != rhs)[0])
            raise PreconditionError(f"not associative: ({a}*{b})*{c} != {a}*({b}*{c})")
        self.table = T
        self.names = tuple(names) if names is not None else tuple(str(i) for i in range(n))
        self.free_generators = tuple(generators) if generators is not None else None

    @property
    def n(self) -> int:
        return self.table.shape[0]

    @classmethod
    def from_text(cls, text: str) -> FiniteSemigroup:
        rows = [line.split() for line in text.splitlines()
                if line.strip() and not line.lstrip().startswith("#")]
        try:
            table = [[int(v) for v in row] for row in rows]
        except ValueError as exc:
            raise ParseError(f"bad Cayley table entry: {exc}", text) from None
        return cls(table)

    @classmethod
    def from_free_object(cls, F: FreeObject) -> FiniteSemigroup:
        """The quotient carried by F, with its k generators remembered."""
        reps = sorted(set(F.labels[1:]))
        index = np.full(F.base.size, -1, dtype=np.intp)
        index[reps] = np.arange(len(reps))
        labels = np.asarray(F.labels)
        table = index[labels[F.carrier.add(np.array(reps), np.array(reps))]]
        names = ["0" if r == F.zero else str(F.word_of(r)) for r in reps]
        gens = [int(index[F.labels[g]]) for g in F.carrier.generators]
        return cls(table, names, gens)

    def zero(self) -> int | None:
        T = self.table
        for z in range(self.n):
            if (T[z] == z).all() and (T[:, z] == z).all():
                return z
        return None

    def generating_set(self) -> list[int]:
        if self.free_generators is not None:
            return list(dict.fromkeys(self.free_generators))
        gens: list[int] = []
        reached = np.zeros(self.n, dtype=bool)
        # indecomposable elements first, then whatever is still missing
        products = set(self.table.ravel().tolist())
        candidates = [e for e in range(self.n) if e not in products] + list(range(self.n))
        for e in candidates:
            if not reached[e]:
                gens.append(e)
                reached = self._closure(gens)
        return gens

    def _closure(self, gens: list[int]) -> np.ndarray:
        reached = np.zeros(self.n, dtype=bool)
        reached[gens] = True
        while True:
            new = reached.copy()
            new[np.unique(self.table[np.ix_(reached, gens)])] = True
            if (new == reached).all():
                return reached
            reached = new

    def words(self, gens: list[int]) -> dict[int, tuple[int, ...]]:
        """A shortest expression of each element as a product of generators."""
        words = {g: (i,) for i, g in reversed(list(enumerate(gens)))}
        frontier = list(words)
        while frontier:
            nxt = []
            for e in frontier:
                for i, g in enumerate(gens):
                    f = int(self.table[e, g])
                    if f not in words:
                        words[f] = words[e] + (i,)
                        nxt.append(f)
            frontier = nxt
        if len(words) != self.n:
            raise PreconditionError("generating set does not generate the semigroup")
        return words

    def __repr__(self):
        return f"FiniteSemigroup(n={self.n})"


def endomorphisms(S: FiniteSemigroup, size_cap: int = SIZE_CAP,
                  map_cap: int = ENDOMORPHISM_CAP) -> list[tuple[int, ...]]:
    """All endomorphisms, as image tuples; candidates are generator images."""
    if S.n > size_cap:
        raise ResourceLimitError(f"semigroup of size {S.n} exceeds the cap {size_cap}")
    gens = S.generating_set()
    if S.n ** len(gens) > map_cap:
        raise ResourceLimitError(f"{S.n}^{len(gens)} candidate maps exceed the cap {map_cap}")
    words = S.words(gens)
    T = S.table
    order = list(range(S.n))
    out = []
    for images in product(range(S.n), repeat=len(gens)):
        f = np.empty(S.n, dtype=np.intp)
        for e in order:
            w = words[e]
            v = images[w[0]]
            for i in w[1:]:
                v = T[v, images[i]]
            f[e] = v
        if np.array_equal(f[T], T[f[:, None], f[None, :]]):
            out.append(tuple(int(v) for v in f))
    return out


def _congruence_closure(S: FiniteSemigroup, pairs, maps: Sequence[tuple[int, ...]] = ()) -> Partition:
    """Least congruence containing ``pairs`` and closed under ``maps``."""
    T = S.table
    rows = T.tolist()
    cols = T.T.tolist()
    uf = UnionFind(S.n)
    stack = list(pairs)
    for f in maps:
        stack.extend((f[a], f[b]) for a, b in pairs)
    while stack:
        a, b = stack.pop()
        if uf.union(a, b):
            for c in range(S.n):
                stack.append((rows[a][c], rows[b][c]))
                stack.append((cols[a][c], cols[b][c]))
            for f in maps:
                stack.append((f[a], f[b]))
    return Partition(tuple(uf.labels()))


def is_congruence(S: FiniteSemigroup, p: Partition) -> bool:
    lab = np.asarray(p.labels)
    T = S.table
    # a ~ b must force ac ~ bc and ca ~ cb
    rows = lab[T]
    return bool((rows == rows[lab]).all() and (rows.T == rows.T[lab]).all())


def is_fully_invariant(S: FiniteSemigroup, p: Partition, maps=None) -> bool:
    maps = endomorphisms(S) if maps is None else maps
    lab = np.asarray(p.labels)
    return is_congruence(S, p) and all(
        (lab[np.asarray(f)] == lab[np.asarray(f)[lab]]).all() for f in maps)


@dataclass
class FicLattice:
    semigroup: FiniteSemigroup
    congruences: list[Partition]
    lattice: FiniteLattice
    endomorphisms: list[tuple[int, ...]]

    def label(self, i: int) -> str:
        return self.lattice.names[i]


def _congruence_name(S: FiniteSemigroup, p: Partition) -> str:
    classes = [c for c in p.classes() if len(c) > 1]
    if not classes:
        return "Δ"
    if len(classes) == 1 and len(classes[0]) == S.n:
        return "∇"
    return " | ".join("~".join(S.names[i] for i in c) for c in classes)


def fully_invariant_congruences(S: FiniteSemigroup, size_cap: int = SIZE_CAP) -> tuple[list[Partition], list]:
    maps = endomorphisms(S, size_cap)
    principal = {_congruence_closure(S, [(a, b)], maps)
                 for a in range(S.n) for b in range(a + 1, S.n)}
    found = {Partition.discrete(S.n)}
    frontier = list(found)
    while frontier:
        nxt = []
        for c in frontier:
            for p in principal:
                j = c | p
                if j not in found:
                    found.add(j)
                    nxt.append(j)
        frontier = nxt
    ordered = sorted(found, key=lambda p: (-p.n_classes(), p.labels))
    return ordered, maps


def fic_lattice(S: FiniteSemigroup | FreeObject, size_cap: int = SIZE_CAP) -> FicLattice:
    if isinstance(S, FreeObject):
        S = FiniteSemigroup.from_free_object(S)
    if S.n > size_cap:
        raise ResourceLimitError(f"semigroup of size {S.n} exceeds the cap {size_cap}")
    congs, maps = fully_invariant_congruences(S, size_cap)
    m = len(congs)
    leq = np.array([[congs[i] <= congs[j] for j in range(m)] for i in range(m)])
    names = [_congruence_name(S, p) for p in congs]
    return FicLattice(S, congs, FiniteLattice(names, leq), maps)


def zero_class_congruences(fl: FicLattice) -> list[int]:
    """Indices of congruences whose only non-singleton class is an
    endomorphism-closed ideal containing the zero."""
    S = fl.semigroup
    z = S.zero()
    if z is None:
        return []
    T = S.table
    out = []
    for i, p in enumerate(fl.congruences):
        big = [c for c in p.classes() if len(c) > 1]
        if len(big) != 1 or z not in big[0]:
            continue
        ideal = np.zeros(S.n, dtype=bool)
        ideal[big[0]] = True
        if not (ideal[T[ideal]].all() and ideal[T[:, ideal]].all()):
            continue
        if all(ideal[np.asarray(f)[ideal]].all() for f in fl.endomorphisms):
            out.append(i)
    return out
