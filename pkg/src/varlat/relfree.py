"""Finite relatively free commutative periodic semigroups.

For a commutative basis satisfying ``x^a = x^(a+b)`` the free object on ``k``
generators of ``var{xy = yx, x^a = x^(a+b)}`` is the set of nonzero exponent
vectors in ``{0, ..., a+b-1}^k`` with componentwise addition, where an exponent
``>= a`` is folded back into ``[a, a+b)``. The free object of the variety
itself is the quotient by the congruence generated by all substitution
instances of the basis; that congruence is computed here with a union-find
and a translation worklist.

Elements are encoded as integers in radix ``a+b``; code 0 is the empty product
(the adjoined identity) and never part of the carrier.
"""

from __future__ import annotations

import hashlib
import json
import os
import tempfile
from dataclasses import dataclass
from functools import lru_cache
from itertools import permutations
from pathlib import Path

import numpy as np

from .errors import PreconditionError, ResourceLimitError
from .partition import Partition, UnionFind
from .syntax import (
    AnyWord,
    Basis,
    ComWord,
    Equation,
    Identity,
    Word,
    ZeroReduced,
    is_balanced,
    periodicity_exponents,
)
from .zerored import ZeroSystem, minimal_generators

DEFAULT_CARRIER_CAP = 4096
CARRIER_CAP = DEFAULT_CARRIER_CAP
INSTANCE_CAP = 10**7


@dataclass(frozen=True)
class PeriodicBase:
    a: int
    b: int
    k: int

    def __post_init__(self):
        if self.a < 1 or self.b < 1 or self.k < 1:
            raise PreconditionError(f"invalid periodic base {self}")

    @property
    def radix(self) -> int:
        return self.a + self.b

    @property
    def size(self) -> int:
        """Number of codes, including the empty product."""
        return self.radix ** self.k


class Carrier:
    def __init__(self, base: PeriodicBase):
        self.base = base
        a, r, k = base.a, base.radix, base.k
        self.N = base.size
        idx = np.arange(self.N)
        self.weights = r ** np.arange(k)
        self.digits = (idx[:, None] // self.weights[None, :]) % r
        self.generators = [int(w) for w in self.weights]
        self.shifts = [self.add(idx, np.array([g]))[:, 0] for g in self.generators]
        self.shift_lists = [s.tolist() for s in self.shifts]

    def normalize(self, d: np.ndarray) -> np.ndarray:
        a, b = self.base.a, self.base.b
        return np.where(d >= a, a + (d - a) % b, d)

    def encode(self, d: np.ndarray) -> np.ndarray:
        return (d * self.weights).sum(axis=-1)

    def add(self, P: np.ndarray, Q: np.ndarray) -> np.ndarray:
        """Products of every element of P with every element of Q, shape (|P|, |Q|)."""
        d = self.digits[P][:, None, :] + self.digits[Q][None, :, :]
        return self.encode(self.normalize(d))

    def scale(self, e: int, C: np.ndarray) -> np.ndarray:
        if e == 0:
            return np.zeros_like(C)
        return self.encode(self.normalize(e * self.digits[C]))

    def code(self, counts) -> int:
        d = np.asarray(counts, dtype=np.int64)
        return int(self.encode(self.normalize(d)))

    def vector(self, code: int) -> tuple[int, ...]:
        return tuple(int(x) for x in self.digits[code])


@lru_cache(maxsize=64)
def carrier(base: PeriodicBase) -> Carrier:
    return Carrier(base)


def _rename_to_prefix(identity: Identity) -> tuple[Identity, int]:
    letters = sorted(identity.letters())
    mapping = {a: i + 1 for i, a in enumerate(letters)}
    if isinstance(identity, ZeroReduced):
        return ZeroReduced(identity.word.rename(mapping)), len(letters)
    return Equation(identity.lhs.rename(mapping), identity.rhs.rename(mapping)), len(letters)


def _letter_exponents(identity: Identity) -> list[tuple[int, int]]:
    if isinstance(identity, ZeroReduced):
        return [(e, 0) for _, e in identity.word.parikh.items]
    u, v = identity.lhs.parikh.counts, identity.rhs.parikh.counts
    return [(u.get(a, 0), v.get(a, 0)) for a in sorted(set(u) | set(v))]


@dataclass(frozen=True, eq=False)
class FreeObject:
    """Relatively free semigroup on ``base.k`` generators.

    ``labels[c]`` is the least code in the class of code ``c``; ``zero`` is the
    label of the absorbing class when there is one.
    """

    base: PeriodicBase
    labels: tuple[int, ...]
    zero: int | None

    @property
    def k(self) -> int:
        return self.base.k

    @property
    def carrier(self) -> Carrier:
        return carrier(self.base)

    @property
    def carrier_size(self) -> int:
        return self.base.size - 1

    def classes(self) -> list[list[int]]:
        groups: dict[int, list[int]] = {}
        for c in range(1, self.base.size):
            groups.setdefault(self.labels[c], []).append(c)
        return list(groups.values())

    @property
    def n_classes(self) -> int:
        return len(set(self.labels[1:]))

    def code(self, w) -> int:
        """Code of a word over letters ``1..k`` (or an exponent vector)."""
        if isinstance(w, (Word, ComWord)):
            counts = w.parikh.counts
            if max(counts) > self.k:
                raise PreconditionError(f"word {w} uses more than {self.k} generators")
            w = [counts.get(i + 1, 0) for i in range(self.k)]
        return self.carrier.code(w)

    def label(self, w) -> int:
        return self.labels[self.code(w)]

    def same(self, u, v) -> bool:
        return self.label(u) == self.label(v)

    def is_zero(self, w) -> bool:
        return self.zero is not None and self.label(w) == self.zero

    def partition(self) -> Partition:
        return Partition(self.labels)

    def word_of(self, code: int) -> ComWord:
        vec = self.carrier.vector(code)
        return ComWord(tuple((i + 1, e) for i, e in enumerate(vec) if e))

    def to_json(self) -> dict:
        return {"a": self.base.a, "b": self.base.b, "k": self.base.k,
                "labels": list(self.labels), "zero": self.zero}

    @classmethod
    def from_json(cls, data: dict) -> FreeObject:
        base = PeriodicBase(data["a"], data["b"], data["k"])
        return cls(base, tuple(data["labels"]), data["zero"])


def _close(uf: UnionFind, pairs, shifts) -> None:
    stack = list(pairs)
    while stack:
        p, q = stack.pop()
        if uf.union(p, q):
            for s in shifts:
                stack.append((s[p], s[q]))


def _instance_pairs(car: Carrier, identity: Identity, canon: np.ndarray, budget: list) -> np.ndarray:
    """Pairs (code, code) of every substitution instance, reduced modulo ``canon``.

    Letters are substituted one at a time; partial products are replaced by
    their current class representative, and images range over representatives
    only. Both reductions are sound because the final congruence contains the
    current one.
    """
    N = car.N
    reps = np.unique(canon[1:])
    if isinstance(identity, ZeroReduced):
        values = np.zeros(1, dtype=np.int64)
        for e, _ in _letter_exponents(identity):
            budget[0] += len(values) * len(reps)
            if budget[0] > budget[1]:
                raise ResourceLimitError(f"resource limit: more than {budget[1]} instances")
            values = np.unique(canon[car.add(values, car.scale(e, reps))])
        out = [np.stack([values, s[values]], axis=1) for s in car.shifts]
        return np.concatenate(out)
    states = np.zeros(1, dtype=np.int64)
    for e, f in _letter_exponents(identity):
        budget[0] += len(states) * len(reps)
        if budget[0] > budget[1]:
            raise ResourceLimitError(f"resource limit: more than {budget[1]} instances")
        P, Q = np.divmod(states, N)
        newP = canon[car.add(P, car.scale(e, reps))]
        newQ = canon[car.add(Q, car.scale(f, reps))]
        states = np.unique(newP * N + newQ)
    P, Q = np.divmod(states, N)
    return np.stack([P, Q], axis=1)


def _find_zero(labels: list[int], car: Carrier) -> int | None:
    for lab in sorted(set(labels[1:])):
        if all(labels[s[lab]] == lab for s in car.shift_lists):
            return lab
    return None


_MEMO: dict = {}
_DISK_CACHE: Path | None = None


def set_cache_dir(path) -> None:
    """Persist completed free objects under ``path`` (None disables)."""
    global _DISK_CACHE
    _DISK_CACHE = None if path is None else Path(path)


def cache_key(basis: Basis, base: PeriodicBase) -> str:
    text = f"{normal_form(basis)}|k={base.k}|a={base.a}|b={base.b}"
    return hashlib.sha256(text.encode()).hexdigest()


def _disk_load(key: str) -> FreeObject | None:
    if _DISK_CACHE is None:
        return None
    path = _DISK_CACHE / f"{key}.json"
    if not path.exists():
        return None
    return FreeObject.from_json(json.loads(path.read_text()))


def _disk_store(key: str, obj: FreeObject) -> None:
    if _DISK_CACHE is None:
        return
    _DISK_CACHE.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=_DISK_CACHE, suffix=".tmp")
    with os.fdopen(fd, "w") as fh:
        json.dump(obj.to_json(), fh)
    os.replace(tmp, _DISK_CACHE / f"{key}.json")


def _require_commutative(basis: Basis) -> None:
    if not basis.commutative:
        raise PreconditionError("commutative basis required")


def set_limits(carrier_cap: int | None = None, instance_cap: int | None = None) -> None:
    """Change the default resource caps used when no explicit cap is passed."""
    global CARRIER_CAP, INSTANCE_CAP
    if carrier_cap is not None:
        CARRIER_CAP = carrier_cap
    if instance_cap is not None:
        INSTANCE_CAP = instance_cap


def build_on_base(basis: Basis, base: PeriodicBase, *, carrier_cap: int | None = None,
                  instance_cap: int | None = None) -> FreeObject:
    """Quotient of the free object of ``x^a = x^(a+b)`` by the basis.

    Does not check that the basis implies the base law; if it does not, the
    result is the free object of the meet of the two varieties.
    """
    _require_commutative(basis)
    carrier_cap = CARRIER_CAP if carrier_cap is None else carrier_cap
    instance_cap = INSTANCE_CAP if instance_cap is None else instance_cap
    if base.size - 1 > carrier_cap:
        raise ResourceLimitError(
            f"resource limit: carrier of {base.size - 1} elements exceeds cap {carrier_cap}")
    memo_key = (basis, base)
    if memo_key in _MEMO:
        return _MEMO[memo_key]
    key = cache_key(basis, base)
    cached = _disk_load(key)
    if cached is not None:
        _MEMO[memo_key] = cached
        return cached
    car = carrier(base)
    uf = UnionFind(car.N)
    budget = [0, instance_cap]
    work = [i for i in basis if isinstance(i, ZeroReduced)]
    work += [i for i in basis if isinstance(i, Equation) and not is_balanced(i)]
    for identity in work:
        canon = np.asarray(uf.labels())
        pairs = _instance_pairs(car, identity, canon, budget)
        pairs = pairs[canon[pairs[:, 0]] != canon[pairs[:, 1]]]
        _close(uf, pairs.tolist(), car.shift_lists)
    labels = uf.labels()
    obj = FreeObject(base, tuple(labels), _find_zero(labels, car))
    _MEMO[memo_key] = obj
    _disk_store(key, obj)
    return obj


def clear_memo() -> None:
    _MEMO.clear()
    base_exponents.cache_clear()


@lru_cache(maxsize=512)
def base_exponents(basis: Basis) -> tuple[int, int]:
    """Least index and period of a one-generator element of var(basis)."""
    _require_commutative(basis)
    ab = periodicity_exponents(basis)
    if ab is None:
        raise PreconditionError("variety not periodic (contains COM)")
    a, b = ab
    F1 = build_on_base(basis, PeriodicBase(a, b, 1))
    seen: dict[int, int] = {}
    for j in range(1, a + b + 1):
        lab = F1.labels[F1.carrier.code([j])]
        if lab in seen:
            return seen[lab], j - seen[lab]
        seen[lab] = j
    raise AssertionError("monogenic sequence did not cycle")


def build_relfree(basis: Basis, k: int, **caps) -> FreeObject:
    """Free object of var(basis) on ``k`` generators."""
    _require_commutative(basis)
    a, b = base_exponents(basis)
    return build_on_base(basis, PeriodicBase(a, b, k), **caps)


def _power(letter: int, e: int) -> Word:
    return Word.power(letter, e)


def holds(basis: Basis, identity: Identity, **caps) -> bool:
    """Whether ``identity`` is an identity of var(basis)."""
    _require_commutative(basis)
    if isinstance(identity, Equation) and is_balanced(identity):
        return True
    renamed, m = _rename_to_prefix(identity)
    if isinstance(renamed, ZeroReduced):
        F = build_relfree(basis, m + 1, **caps)
        code = F.code(renamed.word)
        return F.labels[code] == F.labels[F.carrier.shift_lists[m][code]]
    F = build_relfree(basis, m, **caps)
    return F.same(renamed.lhs, renamed.rhs)


def is_zero_word(basis: Basis, w: AnyWord, **caps) -> bool:
    return holds(basis, ZeroReduced(w.parikh.to_word() if isinstance(w, ComWord) else w), **caps)


def is_nil(basis: Basis, **caps) -> int | None:
    """Least ``c`` with ``x^c = 0`` in var(basis), or None when not nil."""
    a, _ = base_exponents(basis)
    F = build_relfree(basis, 2, **caps)
    shift = F.carrier.shift_lists[1]
    for c in range(1, a + 1):
        code = F.carrier.code([c, 0])
        if F.labels[code] == F.labels[shift[code]]:
            return c
    return None


def _require_nil(basis: Basis, **caps) -> int:
    a = is_nil(basis, **caps)
    if a is None:
        raise PreconditionError("nil variety required")
    return a


def is_zero_reduced_in_com(basis: Basis, **caps) -> bool:
    """Whether var(basis) is defined within COM by 0-reduced identities."""
    _require_nil(basis, **caps)
    for identity in basis:
        if isinstance(identity, ZeroReduced) or is_balanced(identity):
            continue
        if not (is_zero_word(basis, identity.lhs, **caps) and is_zero_word(basis, identity.rhs, **caps)):
            return False
    return True


def partitions_bounded(total_max: int, part_max: int, parts_max: int):
    """Non-increasing tuples with sum <= total_max, parts <= part_max, len <= parts_max."""
    def rec(prefix, remaining, cap):
        if prefix:
            yield tuple(prefix)
        if len(prefix) == parts_max:
            return
        for p in range(min(cap, remaining), 0, -1):
            prefix.append(p)
            yield from rec(prefix, remaining - p, p)
            prefix.pop()
    yield from rec([], total_max, part_max)


def canonical_word(parts) -> ComWord:
    return ComWord(tuple((i + 1, e) for i, e in enumerate(parts)))


def zero_words(basis: Basis, length: int, max_letters: int | None = None, **caps) -> list[ComWord]:
    """All words (one per COM-equivalence class) of length <= ``length`` that are 0 in V."""
    a = _require_nil(basis, **caps)
    r = min(length, max_letters if max_letters is not None else length)
    F = build_relfree(basis, r + 1, **caps)
    shift = F.carrier.shift_lists[r]
    out = []
    for parts in partitions_bounded(length, a, r):
        code = F.code(list(parts) + [0] * (r + 1 - len(parts)))
        if F.labels[code] == F.labels[shift[code]]:
            out.append(canonical_word(parts))
    return out


def zr_truncation(basis: Basis, length: int, max_letters: int | None = None, **caps) -> ZeroSystem:
    """Minimal 0-reduced identities of V among words of bounded length and letters."""
    return ZeroSystem(tuple(minimal_generators(zero_words(basis, length, max_letters, **caps))))


def zero_system_basis(system: ZeroSystem) -> Basis:
    return Basis.commutative_with(*system.identities())


def variety_congruence(basis: Basis, base: PeriodicBase, **caps) -> Partition:
    """The fully invariant congruence of var(basis) on the carrier of ``base``."""
    law = Equation(_power(1, base.a), _power(1, base.a + base.b))
    if not holds(basis, law, **caps):
        raise PreconditionError("basis does not satisfy base law")
    return build_on_base(basis, base, **caps).partition()


def verify_join_identity(basis: Basis, n: int, k_max: int, **caps) -> bool:
    """Check ``V ∨ A_n = ZR(V) ∨ A_n`` on up to ``k_max`` generators.

    Joins of varieties are intersections of their congruences on a shared
    carrier, so both sides are compared as partitions for each k.
    """
    _require_commutative(basis)
    if not holds(basis, ZeroReduced(_power(1, n)), **caps):
        raise PreconditionError(f"basis does not satisfy x^{n} = 0")
    from .known import A, presentation

    groups = presentation(A(n))
    for k in range(1, k_max + 1):
        base = PeriodicBase(n, n, k)
        theta_g = variety_congruence(groups, base, **caps)
        zr = zero_system_basis(zr_truncation(basis, n * k, k, **caps))
        left = variety_congruence(basis, base, **caps) & theta_g
        right = variety_congruence(zr, base, **caps) & theta_g
        if left != right:
            return False
    return True


def substitutive_identities(basis: Basis, k: int, **caps) -> list[Equation]:
    """Substitutive identities of V on at most ``k`` letters with nonzero sides.

    Words range over the carrier of the k-generated free object, so lengths are
    bounded by the carrier exponents. One identity per unordered pair of codes.
    """
    F = build_relfree(basis, k, **caps)
    car = F.carrier
    seen = set()
    out = []
    for code in range(1, car.N):
        if F.labels[code] == F.zero:
            continue
        vec = car.vector(code)
        support = [i for i, e in enumerate(vec) if e]
        for perm in permutations(support):
            img = [0] * k
            for src, dst in zip(support, perm):
                img[dst] = vec[src]
            other = car.code(img)
            if other == code or F.labels[other] != F.labels[code]:
                continue
            key = (min(code, other), max(code, other))
            if key in seen:
                continue
            seen.add(key)
            out.append(Equation(F.word_of(code).to_word(), F.word_of(other).to_word()))
    return out


def normal_form(basis: Basis) -> str:
    """Canonical text of a basis, stable under letter renaming and side order."""
    parts = sorted({_identity_normal_form(i, basis.commutative) for i in basis})
    return ("C;" if basis.commutative else "N;") + ";".join(parts)


def _identity_normal_form(identity: Identity, commutative: bool) -> str:
    letters = sorted(identity.letters())
    orders = permutations(range(1, len(letters) + 1)) if len(letters) <= 6 else [range(1, len(letters) + 1)]
    best = None
    for order in orders:
        mapping = dict(zip(letters, order))
        if isinstance(identity, ZeroReduced):
            w = identity.word.rename(mapping)
            cands = [str(w.parikh if commutative else w) + "=0"]
        else:
            u, v = identity.lhs.rename(mapping), identity.rhs.rename(mapping)
            if commutative:
                u, v = u.parikh, v.parikh
            su, sv = str(u), str(v)
            cands = [f"{su}={sv}", f"{sv}={su}"]
        cand = min(cands)
        if best is None or cand < best:
            best = cand
    return best
