"""Word problems for a handful of small named varieties."""

from __future__ import annotations

import re
from dataclasses import dataclass

from .errors import ParseError, PreconditionError
from .syntax import Basis, Equation, Identity, Word, ZeroReduced

TAGS = ("T", "SL", "LZ", "RZ", "P", "Pdual", "COM", "A")


@dataclass(frozen=True)
class KnownVariety:
    tag: str
    n: int | None = None

    def __post_init__(self):
        if self.tag not in TAGS:
            raise PreconditionError(f"unknown variety {self.tag!r}")
        if self.tag == "A":
            if self.n is None or self.n < 1:
                raise PreconditionError("A(n) requires n >= 1")
        elif self.n is not None:
            raise PreconditionError(f"{self.tag} takes no parameter")

    @classmethod
    def parse(cls, name: str) -> KnownVariety:
        m = re.fullmatch(r"A\(?(\d+)\)?", name.strip())
        if m:
            return cls("A", int(m.group(1)))
        if name.strip() in TAGS and name.strip() != "A":
            return cls(name.strip())
        raise ParseError(f"unknown variety name {name!r}", name)

    def __str__(self) -> str:
        return f"A{self.n}" if self.tag == "A" else self.tag


T = KnownVariety("T")
SL = KnownVariety("SL")
LZ = KnownVariety("LZ")
RZ = KnownVariety("RZ")
P = KnownVariety("P")
PDUAL = KnownVariety("Pdual")
COM = KnownVariety("COM")


def A(n: int) -> KnownVariety:
    return KnownVariety("A", n)


def _holds_lz(u: Word, v: Word) -> bool:
    return u.head == v.head


def _holds_p(u: Word, v: Word) -> bool:
    if u.content != v.content:
        return False
    tu, tv = u.count(u.tail), v.count(v.tail)
    if tu > 1 and tv > 1:
        return True
    return tu == tv == 1 and u.tail == v.tail


def _holds_equation(u: Word, v: Word, K: KnownVariety) -> bool:
    tag = K.tag
    if tag == "T":
        return True
    if tag == "SL":
        return u.content == v.content
    if tag == "LZ":
        return _holds_lz(u, v)
    if tag == "RZ":
        return _holds_lz(u.reversed(), v.reversed())
    if tag == "P":
        return _holds_p(u, v)
    if tag == "Pdual":
        return _holds_p(u.reversed(), v.reversed())
    if tag == "COM":
        return u.parikh == v.parikh
    pu, pv = u.parikh.counts, v.parikh.counts
    return all((pu.get(a, 0) - pv.get(a, 0)) % K.n == 0 for a in set(pu) | set(pv))


def holds_in(identity: Identity, K: KnownVariety) -> bool:
    if isinstance(identity, ZeroReduced):
        return all(_holds_equation(e.lhs, e.rhs, K) for e in identity.expanded())
    return _holds_equation(identity.lhs, identity.rhs, K)


def contained_in_var(K: KnownVariety, basis: Basis) -> bool:
    return all(holds_in(i, K) for i in basis)


def monoid_nil_precondition(basis: Basis) -> bool:
    """True iff none of LZ, RZ, P, Pdual lies in var(basis)."""
    return not any(contained_in_var(K, basis) for K in (LZ, RZ, P, PDUAL))


def presentation(K: KnownVariety) -> Basis:
    """A defining identity system for K (commutative ones include xy = yx)."""
    x, y = Word.of(1), Word.of(2)
    if K.tag == "T":
        return Basis.commutative_with(Equation(x, y))
    if K.tag == "SL":
        return Basis.commutative_with(Equation(x, x * x))
    if K.tag == "COM":
        return Basis.commutative_with()
    if K.tag == "A":
        return Basis.commutative_with(Equation(x ** K.n * y, y))
    if K.tag == "LZ":
        return Basis.of(Equation(x * y, x))
    if K.tag == "RZ":
        return Basis.of(Equation(x * y, y))
    if K.tag == "P":
        return Basis.of(Equation(x * y, x * x * y), Equation(x * x * y * y, y * y * x * x))
    return Basis.of(Equation(x * y, x * y * y), Equation(x * x * y * y, y * y * x * x))
