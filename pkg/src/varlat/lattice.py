"""Finite lattices and exhaustive special-element checks.

Every check walks ``(y, z)`` in index order (y outer) and reports the first
pair violating the law, so witnesses are deterministic.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from graphlib import CycleError, TopologicalSorter
from itertools import product
from typing import Callable, NamedTuple, Sequence

import numpy as np

from .errors import ParseError, PreconditionError, ResourceLimitError

MAX_TERM_VARIABLES = 4


class ElementCheck(NamedTuple):
    holds: bool
    witness: tuple | None = None


class FiniteLattice:
    def __init__(self, names: Sequence[str], leq: np.ndarray):
        self.names = tuple(str(n) for n in names)
        self.leq = np.asarray(leq, dtype=bool)
        n = len(self.names)
        if self.leq.shape != (n, n):
            raise PreconditionError("order relation has the wrong shape")
        if len(set(self.names)) != n:
            raise PreconditionError("duplicate element names")
        self.join = self._bounds(self.leq, "join")
        self.meet = self._bounds(self.leq.T, "meet")

    def _bounds(self, leq: np.ndarray, what: str) -> np.ndarray:
        n = self.n
        out = np.empty((n, n), dtype=np.intp)
        for a in range(n):
            for b in range(a, n):
                ub = np.flatnonzero(leq[a] & leq[b])
                least = [u for u in ub if leq[u, ub].all()]
                if len(least) != 1:
                    raise PreconditionError(
                        f"not a lattice (elements {self.names[a]},{self.names[b]} have no {what})")
                out[a, b] = out[b, a] = least[0]
        return out

    @classmethod
    def from_covers(cls, names: Sequence[str], covers: Sequence[tuple[str, str]]) -> FiniteLattice:
        """Lattice from its Hasse diagram; ``(a, b)`` in covers means a < b."""
        index = {name: i for i, name in enumerate(names)}
        graph: dict[str, set[str]] = {name: set() for name in names}
        for a, b in covers:
            if a not in index or b not in index:
                raise PreconditionError(f"cover {a} < {b} names an unknown element")
            graph[b].add(a)
        try:
            tuple(TopologicalSorter(graph).static_order())
        except CycleError as exc:
            raise PreconditionError(f"cycle detected: {' < '.join(exc.args[1])}") from None
        n = len(names)
        leq = np.eye(n, dtype=bool)
        for a, b in covers:
            leq[index[a], index[b]] = True
        for k in range(n):
            leq |= np.outer(leq[:, k], leq[k])
        return cls(names, leq)

    @classmethod
    def from_text(cls, text: str) -> FiniteLattice:
        from .textio import parse_lattice_text
        return cls.from_covers(*parse_lattice_text(text))

    @property
    def n(self) -> int:
        return len(self.names)

    def index(self, name: str | int) -> int:
        if isinstance(name, (int, np.integer)):
            if not 0 <= name < self.n:
                raise PreconditionError(f"no element {name}")
            return int(name)
        try:
            return self.names.index(name)
        except ValueError:
            raise PreconditionError(f"no element {name!r}") from None

    @property
    def bottom(self) -> int:
        return int(np.flatnonzero(self.leq.all(axis=1))[0])

    @property
    def top(self) -> int:
        return int(np.flatnonzero(self.leq.all(axis=0))[0])

    def atoms(self) -> list[int]:
        b = self.bottom
        return [a for a in range(self.n) if a != b and self.leq[b, a]
                and self.leq[:, a].sum() == 2]

    def covers(self) -> list[tuple[int, int]]:
        lt = self.leq & ~np.eye(self.n, dtype=bool)
        return [(int(a), int(b)) for a, b in zip(*np.nonzero(lt))
                if not any(lt[a, c] and lt[c, b] for c in range(self.n))]

    def dual(self) -> FiniteLattice:
        return FiniteLattice(self.names, self.leq.T.copy())

    def is_distributive(self) -> bool:
        return all(distributive_element(self, x).holds for x in range(self.n))

    def is_modular(self) -> bool:
        J, M = self.join, self.meet
        y, z = np.nonzero(self.leq)
        for x in range(self.n):
            if not np.array_equal(M[J[x, y], z], J[M[x, z], y]):
                return False
        return True

    def __repr__(self):
        return f"FiniteLattice({list(self.names)})"


def _first(bad: np.ndarray, ys: np.ndarray, zs: np.ndarray) -> ElementCheck:
    hits = np.flatnonzero(bad)
    if hits.size == 0:
        return ElementCheck(True)
    i = hits[0]
    return ElementCheck(False, (int(ys[i]), int(zs[i])))


def _grid(L: FiniteLattice):
    ys, zs = np.divmod(np.arange(L.n * L.n), L.n)
    return ys, zs


def modular_element(L: FiniteLattice, x) -> ElementCheck:
    """y ≤ z ⇒ (x ∨ y) ∧ z = (x ∧ z) ∨ y."""
    x = L.index(x)
    J, M = L.join, L.meet
    ys, zs = _grid(L)
    bad = L.leq[ys, zs] & (M[J[x, ys], zs] != J[M[x, zs], ys])
    return _first(bad, ys, zs)


def lower_modular_element(L: FiniteLattice, x) -> ElementCheck:
    """x ≤ y ⇒ x ∨ (y ∧ z) = y ∧ (x ∨ z)."""
    x = L.index(x)
    J, M = L.join, L.meet
    ys, zs = _grid(L)
    bad = L.leq[x, ys] & (J[x, M[ys, zs]] != M[ys, J[x, zs]])
    return _first(bad, ys, zs)


def upper_modular_element(L: FiniteLattice, x) -> ElementCheck:
    """y ≤ x ⇒ x ∧ (y ∨ z) = y ∨ (x ∧ z)."""
    x = L.index(x)
    J, M = L.join, L.meet
    ys, zs = _grid(L)
    bad = L.leq[ys, x] & (M[x, J[ys, zs]] != J[ys, M[x, zs]])
    return _first(bad, ys, zs)


def distributive_element(L: FiniteLattice, x) -> ElementCheck:
    x = L.index(x)
    J, M = L.join, L.meet
    ys, zs = _grid(L)
    bad = J[x, M[ys, zs]] != M[J[x, ys], J[x, zs]]
    return _first(bad, ys, zs)


def codistributive_element(L: FiniteLattice, x) -> ElementCheck:
    x = L.index(x)
    J, M = L.join, L.meet
    ys, zs = _grid(L)
    bad = M[x, J[ys, zs]] != J[M[x, ys], M[x, zs]]
    return _first(bad, ys, zs)


def _generated(L: FiniteLattice, seed: set[int]) -> list[int]:
    elems = set(seed)
    while True:
        new = {int(op[a, b]) for op in (L.join, L.meet) for a in elems for b in elems} - elems
        if not new:
            return sorted(elems)
        elems |= new


def _distributive_subset(L: FiniteLattice, elems: list[int]) -> bool:
    e = np.array(elems)
    p, q, r = np.meshgrid(e, e, e, indexing="ij")
    J, M = L.join, L.meet
    return bool(np.array_equal(J[p, M[q, r]], M[J[p, q], J[p, r]]))


def neutral_by_generation(L: FiniteLattice, x) -> ElementCheck:
    """Every sublattice generated by {x, y, z} is distributive."""
    x = L.index(x)
    for y in range(L.n):
        for z in range(L.n):
            if not _distributive_subset(L, _generated(L, {x, y, z})):
                return ElementCheck(False, (y, z))
    return ElementCheck(True)


def neutral_by_median(L: FiniteLattice, x) -> ElementCheck:
    x = L.index(x)
    J, M = L.join, L.meet
    ys, zs = _grid(L)
    lhs = M[M[J[x, ys], J[ys, zs]], J[zs, x]]
    rhs = J[J[M[x, ys], M[ys, zs]], M[zs, x]]
    return _first(lhs != rhs, ys, zs)


def neutral_element(L: FiniteLattice, x) -> ElementCheck:
    gen = neutral_by_generation(L, x)
    med = neutral_by_median(L, x)
    if gen.holds != med.holds:
        raise AssertionError(f"neutrality procedures disagree at {L.names[L.index(x)]}")
    return med


# unguarded forms of the modular and (lower/upper)-modular laws

def modular_element_unguarded(L: FiniteLattice, x) -> ElementCheck:
    """(x ∨ y) ∧ (y ∨ z) = (x ∧ (y ∨ z)) ∨ y."""
    x = L.index(x)
    J, M = L.join, L.meet
    ys, zs = _grid(L)
    bad = M[J[x, ys], J[ys, zs]] != J[M[x, J[ys, zs]], ys]
    return _first(bad, ys, zs)


def lower_modular_element_unguarded(L: FiniteLattice, x) -> ElementCheck:
    """(x ∨ y) ∧ (x ∨ z) = ((x ∨ y) ∧ z) ∨ x."""
    x = L.index(x)
    J, M = L.join, L.meet
    ys, zs = _grid(L)
    bad = M[J[x, ys], J[x, zs]] != J[M[J[x, ys], zs], x]
    return _first(bad, ys, zs)


def upper_modular_element_unguarded(L: FiniteLattice, x) -> ElementCheck:
    """(x ∧ y) ∨ (x ∧ z) = ((x ∧ y) ∨ z) ∧ x."""
    x = L.index(x)
    J, M = L.join, L.meet
    ys, zs = _grid(L)
    bad = J[M[x, ys], M[x, zs]] != M[J[M[x, ys], zs], x]
    return _first(bad, ys, zs)


CHECKS: dict[str, Callable[[FiniteLattice, int], ElementCheck]] = {
    "modular": modular_element,
    "lower_modular": lower_modular_element,
    "upper_modular": upper_modular_element,
    "distributive": distributive_element,
    "codistributive": codistributive_element,
    "neutral": neutral_element,
}

UNGUARDED = {
    "modular": modular_element_unguarded,
    "lower_modular": lower_modular_element_unguarded,
    "upper_modular": upper_modular_element_unguarded,
}


def analyze(L: FiniteLattice, properties: Sequence[str] | None = None,
            elements: Sequence | None = None) -> dict[str, dict[str, ElementCheck]]:
    """Table element name -> property -> check."""
    properties = list(properties or CHECKS)
    for p in properties:
        if p not in CHECKS:
            raise PreconditionError(f"unknown property {p!r}")
    idx = range(L.n) if elements is None else [L.index(e) for e in elements]
    return {L.names[x]: {p: CHECKS[p](L, x) for p in properties} for x in idx}


@dataclass
class AuditEntry:
    element: str
    property: str
    guarded: bool
    unguarded: bool


def alternative_form_audit(L: FiniteLattice) -> list[AuditEntry]:
    """Elements where a guarded law and its unguarded form disagree."""
    out = []
    for x in range(L.n):
        for prop, alt in UNGUARDED.items():
            g, u = CHECKS[prop](L, x).holds, alt(L, x).holds
            if g != u:
                out.append(AuditEntry(L.names[x], prop, g, u))
    return out


# lattice terms

@dataclass(frozen=True)
class LatticeTerm:
    op: str  # "var", "join" or "meet"
    name: str = ""
    left: LatticeTerm | None = None
    right: LatticeTerm | None = None

    def variables(self) -> set[str]:
        if self.op == "var":
            return {self.name}
        return self.left.variables() | self.right.variables()

    def evaluate(self, L: FiniteLattice, env: dict):
        if self.op == "var":
            return env[self.name]
        a, b = self.left.evaluate(L, env), self.right.evaluate(L, env)
        return (L.join if self.op == "join" else L.meet)[a, b]

    def __str__(self):
        if self.op == "var":
            return self.name
        sym = "∨" if self.op == "join" else "∧"
        return f"({self.left} {sym} {self.right})"


_TERM_TOKEN = re.compile(r"\s*(?:([A-Za-z]\w*)|(∨|\\/|\||\+)|(∧|/\\|&|\^|\*)|(\()|(\)))")


def _tokenize(text: str):
    pos, out = 0, []
    text = text.rstrip()
    while pos < len(text):
        m = _TERM_TOKEN.match(text, pos)
        if not m:
            raise ParseError("unexpected character", text, pos)
        kind = next(i for i, g in enumerate(m.groups()) if g is not None)
        if kind == 0 and m.group(1) in ("v", "V"):
            kind = 1
        out.append((kind, m.group(kind + 1), m.start(kind + 1)))
        pos = m.end()
    return out


def parse_term(text: str) -> LatticeTerm:
    """Parse a lattice term; ∧ (also ``&``, ``^``) binds tighter than ∨ (also ``|``, ``v``)."""
    tokens = _tokenize(text)
    pos = 0

    def peek():
        return tokens[pos][0] if pos < len(tokens) else None

    def atom():
        nonlocal pos
        if pos >= len(tokens):
            raise ParseError("unexpected end of term", text, len(text))
        kind, val, at = tokens[pos]
        pos += 1
        if kind == 0:
            return LatticeTerm("var", val)
        if kind == 3:
            t = expr()
            if peek() != 4:
                raise ParseError("missing ')'", text, at)
            pos += 1
            return t
        raise ParseError(f"unexpected {val!r}", text, at)

    def meet():
        nonlocal pos
        t = atom()
        while peek() == 2:
            pos += 1
            t = LatticeTerm("meet", left=t, right=atom())
        return t

    def expr():
        nonlocal pos
        t = meet()
        while peek() == 1:
            pos += 1
            t = LatticeTerm("join", left=t, right=meet())
        return t

    term = expr()
    if pos != len(tokens):
        raise ParseError("trailing input", text, tokens[pos][2])
    return term


def parse_lattice_identity(text: str) -> tuple[LatticeTerm, LatticeTerm]:
    if text.count("=") != 1:
        raise ParseError("identity needs exactly one '='", text)
    s, t = text.split("=")
    return parse_term(s), parse_term(t)


def check_I_element(L: FiniteLattice, x, identity, distinguished: str = "x",
                    max_variables: int = MAX_TERM_VARIABLES) -> tuple[bool, dict | None]:
    """Does ``s(x, x1..xm) = t(x, x1..xm)`` hold for all values of x1..xm?

    Returns the first failing assignment (variables in sorted order, values
    in index order) as a name -> element-name dict.
    """
    if isinstance(identity, str):
        identity = parse_lattice_identity(identity)
    s, t = identity
    x = L.index(x)
    free = sorted((s.variables() | t.variables()) - {distinguished})
    if len(free) > max_variables:
        raise ResourceLimitError(f"{len(free)} variables exceed the bound {max_variables}")
    if not free:
        env = {distinguished: x}
        ok = s.evaluate(L, env) == t.evaluate(L, env)
        return bool(ok), None if ok else {}
    grids = np.meshgrid(*([np.arange(L.n)] * len(free)), indexing="ij")
    env = {v: g.ravel() for v, g in zip(free, grids)}
    env[distinguished] = np.full(grids[0].size, x)
    bad = np.flatnonzero(s.evaluate(L, env) != t.evaluate(L, env))
    if bad.size == 0:
        return True, None
    i = bad[0]
    return False, {v: L.names[int(env[v][i])] for v in free}


# corpus

def chain(n: int) -> FiniteLattice:
    names = [str(i) for i in range(n)]
    return FiniteLattice.from_covers(names, list(zip(names, names[1:])))


def boolean(k: int) -> FiniteLattice:
    subsets = list(product((0, 1), repeat=k))
    names = ["".join(map(str, s)) for s in subsets]
    covers = [(names[i], names[j]) for i, a in enumerate(subsets) for j, b in enumerate(subsets)
              if sum(b) == sum(a) + 1 and all(p <= q for p, q in zip(a, b))]
    return FiniteLattice.from_covers(names, covers)


def M3() -> FiniteLattice:
    return FiniteLattice.from_covers(
        ["0", "a", "b", "c", "1"],
        [("0", "a"), ("0", "b"), ("0", "c"), ("a", "1"), ("b", "1"), ("c", "1")])


def N5() -> FiniteLattice:
    return FiniteLattice.from_covers(
        ["0", "a", "b", "c", "1"],
        [("0", "a"), ("a", "c"), ("c", "1"), ("0", "b"), ("b", "1")])


def corpus() -> dict[str, FiniteLattice]:
    out = {"N5": N5(), "M3": M3(), "B2": boolean(2), "B3": boolean(3)}
    out.update({f"C{n}": chain(n) for n in range(1, 6)})
    return out
