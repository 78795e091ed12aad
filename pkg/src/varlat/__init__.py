"""Decision procedures for commutative semigroup varieties and finite lattices."""

from .errors import ParseError, PreconditionError, ResourceLimitError, VarlatError
from .syntax import Basis, ComWord, Equation, Word, ZeroReduced
from .textio import parse_basis, parse_identity, parse_word, render

__all__ = [
    "Basis",
    "ComWord",
    "Equation",
    "ParseError",
    "PreconditionError",
    "ResourceLimitError",
    "VarlatError",
    "Word",
    "ZeroReduced",
    "parse_basis",
    "parse_identity",
    "parse_word",
    "render",
]
