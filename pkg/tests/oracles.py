"""Slow, direct reference implementations used to cross-check the package.

Nothing here imports the algorithms under test; only plain tuples, dicts and
itertools are used.
"""

from __future__ import annotations

from itertools import permutations, product


def vectors(r: int, max_len: int, min_len: int = 1):
    """All exponent vectors over r letters with total length in range."""
    for v in product(range(max_len + 1), repeat=r):
        if min_len <= sum(v) <= max_len:
            yield v


def com_equivalent(u: tuple, v: tuple) -> bool:
    """Some permutation of coordinates turns v into u."""
    return len(u) == len(v) and any(tuple(v[p] for p in perm) == u for perm in permutations(range(len(u))))


def zero_consequence(u: tuple, v: tuple) -> bool:
    """v = 0 follows from u = 0: some image of u under a substitution into
    nonempty words divides v (exhaustive over all images)."""
    r = len(v)
    letters = [i for i, e in enumerate(u) if e]
    images = [w for w in vectors(r, sum(v))]
    for choice in product(images, repeat=len(letters)):
        total = [0] * r
        for i, img in zip(letters, choice):
            for j in range(r):
                total[j] += u[i] * img[j]
        if all(t <= x for t, x in zip(total, v)):
            return True
    return False


class _UF:
    def __init__(self):
        self.parent = {}

    def find(self, a):
        self.parent.setdefault(a, a)
        while self.parent[a] != a:
            a = self.parent[a]
        return a

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[max(ra, rb)] = min(ra, rb)
            return True
        return False


def fold(v: tuple, a: int, b: int) -> tuple:
    return tuple(e if e < a else a + (e - a) % b for e in v)


def relfree_classes(identities, a: int, b: int, k: int) -> dict:
    """Classes of the free commutative semigroup of x^a = x^(a+b) on k letters
    modulo the fully invariant congruence generated by ``identities``.

    Identities are pairs (u, v) of exponent tuples over letters 0..m-1, with
    v = None meaning u = 0. Every substitution into every nonempty carrier
    element is instantiated and the result is closed under multiplication
    by every element, then by transitivity, until nothing changes.
    """
    carrier = [v for v in product(range(a + b), repeat=k) if any(v)]

    def mul(p, q):
        return fold(tuple(x + y for x, y in zip(p, q)), a, b)

    def image(w, sigma):
        out = [0] * k
        for e, img in zip(w, sigma):
            for j in range(k):
                out[j] += e * img[j]
        return fold(tuple(out), a, b)

    uf = _UF()
    for c in carrier:
        uf.find(c)
    for u, v in identities:
        m = len(u)
        if v is None:
            # u = 0 means u·g = u for a letter g not in u
            u, v = u + (0,), u + (1,)
            m += 1
        for sigma in product(carrier, repeat=m):
            uf.union(image(u, sigma), image(v, sigma))
    changed = True
    while changed:
        changed = False
        for p in carrier:
            rp = uf.find(p)
            for q in carrier:
                if uf.find(q) != rp:
                    continue
                for c in carrier:
                    if uf.union(mul(p, c), mul(q, c)):
                        changed = True
    classes: dict = {}
    for c in carrier:
        classes.setdefault(uf.find(c), []).append(c)
    return classes


# lattices, computed straight from an order relation

def lattice_from_leq(n: int, leq) -> tuple:
    def join(x, y):
        ub = [z for z in range(n) if leq(x, z) and leq(y, z)]
        return next(z for z in ub if all(leq(z, w) for w in ub))

    def meet(x, y):
        lb = [z for z in range(n) if leq(z, x) and leq(z, y)]
        return next(z for z in lb if all(leq(w, z) for w in lb))

    return join, meet


def modular_element(n, leq, x) -> bool:
    j, m = lattice_from_leq(n, leq)
    return all(m(j(x, y), z) == j(m(x, z), y) for y in range(n) for z in range(n) if leq(y, z))


def neutral_element(n, leq, x) -> bool:
    j, m = lattice_from_leq(n, leq)
    for y in range(n):
        for z in range(n):
            gen = {x, y, z}
            while True:
                new = {f(p, q) for f in (j, m) for p in gen for q in gen} - gen
                if not new:
                    break
                gen |= new
            if any(j(p, m(q, r)) != m(j(p, q), j(p, r)) for p in gen for q in gen for r in gen):
                return False
    return True


# finite semigroups

def set_partitions(items):
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for part in set_partitions(rest):
        for i in range(len(part)):
            yield part[:i] + [[first] + part[i]] + part[i + 1:]
        yield [[first]] + part


def endomorphisms(table) -> list:
    n = len(table)
    return [f for f in product(range(n), repeat=n)
            if all(f[table[a][b]] == table[f[a]][f[b]] for a in range(n) for b in range(n))]


def fully_invariant_congruences(table) -> list:
    """All fully invariant congruences as sorted tuples of frozensets."""
    n = len(table)
    ends = endomorphisms(table)
    out = []
    for part in set_partitions(list(range(n))):
        cls = {e: i for i, block in enumerate(part) for e in block}
        ok = all(cls[table[a][c]] == cls[table[b][c]] and cls[table[c][a]] == cls[table[c][b]]
                 for a in range(n) for b in range(n) if cls[a] == cls[b] for c in range(n))
        ok = ok and all(cls[f[a]] == cls[f[b]] for f in ends
                        for a in range(n) for b in range(n) if cls[a] == cls[b])
        if ok:
            out.append(frozenset(frozenset(b) for b in part))
    return out
