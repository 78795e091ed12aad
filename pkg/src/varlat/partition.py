from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence


class UnionFind:
    def __init__(self, n: int):
        self.parent = list(range(n))

    def find(self, a: int) -> int:
        parent = self.parent
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    def union(self, a: int, b: int) -> bool:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        # smaller index stays root so labels come out canonical
        if rb < ra:
            ra, rb = rb, ra
        self.parent[rb] = ra
        return True

    def labels(self) -> list[int]:
        return [self.find(i) for i in range(len(self.parent))]


def canonical_labels(labels: Sequence) -> tuple[int, ...]:
    """Relabel so every element points at the least member of its class."""
    first: dict = {}
    out = []
    for i, lab in enumerate(labels):
        out.append(first.setdefault(lab, i))
    return tuple(out)


@dataclass(frozen=True)
class Partition:
    """Partition of ``range(n)``; ``labels[i]`` is the least member of i's class."""

    labels: tuple[int, ...]

    @classmethod
    def from_labels(cls, labels: Iterable) -> Partition:
        return cls(canonical_labels(list(labels)))

    @classmethod
    def from_pairs(cls, n: int, pairs: Iterable[tuple[int, int]]) -> Partition:
        uf = UnionFind(n)
        for a, b in pairs:
            uf.union(a, b)
        return cls(tuple(uf.labels()))

    @classmethod
    def discrete(cls, n: int) -> Partition:
        return cls(tuple(range(n)))

    @classmethod
    def full(cls, n: int) -> Partition:
        return cls((0,) * n)

    @property
    def n(self) -> int:
        return len(self.labels)

    def related(self, a: int, b: int) -> bool:
        return self.labels[a] == self.labels[b]

    def classes(self) -> list[list[int]]:
        groups: dict[int, list[int]] = {}
        for i, lab in enumerate(self.labels):
            groups.setdefault(lab, []).append(i)
        return list(groups.values())

    def n_classes(self) -> int:
        return len(set(self.labels))

    def __and__(self, other: Partition) -> Partition:
        return Partition.from_labels(zip(self.labels, other.labels))

    def __or__(self, other: Partition) -> Partition:
        uf = UnionFind(self.n)
        for i in range(self.n):
            uf.union(i, self.labels[i])
            uf.union(i, other.labels[i])
        return Partition(tuple(uf.labels()))

    def __le__(self, other: Partition) -> bool:
        return all(other.labels[i] == other.labels[lab] for i, lab in enumerate(self.labels))
