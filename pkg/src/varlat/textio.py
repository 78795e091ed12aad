"""Text syntax for words, identities, basis files and lattice files.

Words are juxtaposed letters with optional ``^k`` exponents and optional ``*``
separators: ``x^2y``, ``x^2*y``, ``xy^9z^2q``. Letters beyond the named ones
are written ``x_12`` (or ``x_{12}``).
"""

from __future__ import annotations

import re
from pathlib import Path

from .errors import ParseError
from .syntax import (
    LETTER_NAMES,
    Basis,
    ComWord,
    Equation,
    Identity,
    Word,
    ZeroReduced,
)

_TOKEN = re.compile(r"\s*(?:x_\{?(\d+)\}?|([a-z])|(\^)\s*(-?\d+)|(\*)|(\())")


def parse_word(text: str) -> Word:
    letters: list[int] = []
    pos = 0
    text = text.rstrip()
    last: list[int] | None = None
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise ParseError(f"unexpected character {text[pos:pos + 1]!r}", text, pos)
        index, name, caret, exponent, star, paren = m.groups()
        if paren:
            raise ParseError("parentheses are not supported", text, m.start(6))
        if index is not None or name is not None:
            if index is not None:
                letter = int(index)
                if letter < 1:
                    raise ParseError("letter index must be positive", text, m.start(1))
            else:
                letter = LETTER_NAMES.index(name) + 1 if name in LETTER_NAMES else None
                if letter is None:
                    raise ParseError(f"unknown letter {name!r}", text, m.start(2))
            last = [letter]
            letters.append(letter)
        elif caret:
            if last is None:
                raise ParseError("exponent without a letter", text, m.start(3))
            e = int(exponent)
            if e < 1:
                raise ParseError(f"exponent must be positive, got {e}", text, m.start(4))
            letters.extend(last * (e - 1))
            last = None
        pos = m.end()
    if not letters:
        raise ParseError("empty word", text, 0)
    return Word(tuple(letters))


def parse_comword(text: str) -> ComWord:
    return parse_word(text).parikh


def parse_identity(text: str) -> Identity:
    if text.count("=") != 1:
        raise ParseError("identity must contain exactly one '='", text)
    left, right = text.split("=")
    offset = len(left) + 1
    try:
        lhs = parse_word(left)
    except ParseError as exc:
        raise ParseError(str(exc), text) from None
    if right.strip() == "0":
        return ZeroReduced(lhs)
    try:
        rhs = parse_word(right)
    except ParseError as exc:
        pos = None if exc.position is None else exc.position + offset
        raise ParseError(str(exc).split(" at position")[0], text, pos) from None
    return Equation(lhs, rhs)


def render(obj) -> str:
    if isinstance(obj, Basis):
        lines = ["commutative"] if obj.commutative else []
        lines += [render(i) for i in obj.identities]
        return "\n".join(lines) + "\n"
    return str(obj)


def parse_basis(text: str) -> Basis:
    """Basis file: one identity per line, ``#`` comments, optional ``commutative``."""
    identities = []
    commutative = False
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.lower() == "commutative":
            commutative = True
            continue
        try:
            identities.append(parse_identity(line))
        except ParseError as exc:
            raise ParseError(f"line {lineno}: {exc}", raw) from None
    if commutative:
        return Basis.commutative_with(*identities)
    return Basis(tuple(identities))


def parse_basis_inline(text: str) -> Basis:
    """``"xy = yx, x^3 = 0"`` style; commutative law added when present."""
    return parse_basis("\n".join(part for part in re.split(r"[,;\n]", text)))


def read_basis(path) -> Basis:
    return parse_basis(Path(path).read_text())


def parse_lattice_text(text: str):
    """Return ``(names, covers)`` from an ``elements:`` / ``cover:`` file."""
    names: list[str] = []
    covers: list[tuple[str, str]] = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, _, rest = line.partition(":")
        key = key.strip().lower()
        if key == "elements":
            names.extend(rest.split())
        elif key == "cover":
            parts = [p.strip() for p in rest.split("<")]
            if len(parts) < 2 or not all(parts):
                raise ParseError(f"line {lineno}: expected 'cover: a < b'", raw)
            covers.extend(zip(parts, parts[1:]))
        else:
            raise ParseError(f"line {lineno}: unknown directive {key!r}", raw)
    return names, covers
