import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import CORPUS
from varlat.errors import ParseError
from varlat.syntax import Equation, Word, ZeroReduced
from varlat.textio import (
    parse_basis,
    parse_basis_inline,
    parse_identity,
    parse_lattice_text,
    parse_word,
    render,
)


def test_parse_examples():
    assert parse_identity("x^2y = y^2x") == Equation(Word((1, 1, 2)), Word((2, 2, 1)))
    assert parse_identity("x^3 = 0") == ZeroReduced(Word((1, 1, 1)))
    assert parse_word("x_{12}x_3") == Word((12, 3))
    assert parse_word("x^2*y") == parse_word("x^2y")


@pytest.mark.parametrize("text", ["x^0y = y", "= x", "x = ", "x(y) = y", "x = y = z", "xW = x", "^2 = x"])
def test_parse_errors(text):
    with pytest.raises(ParseError):
        parse_identity(text)


def test_parse_error_position():
    with pytest.raises(ParseError, match="position"):
        parse_identity("x^0y = y")


letters = st.lists(st.integers(1, 30), min_size=1, max_size=8)


@given(letters, letters, st.booleans())
def test_round_trip(u, v, zero):
    identity = ZeroReduced(Word(tuple(u))) if zero else Equation(Word(tuple(u)), Word(tuple(v)))
    assert parse_identity(render(identity)) == identity


@pytest.mark.parametrize("name", sorted(CORPUS))
def test_corpus_round_trip(name):
    b = parse_basis_inline(CORPUS[name])
    assert parse_basis(render(b)) == b


def test_basis_file(data_dir):
    text = (data_dir / "example1.bas").read_text()
    b = parse_basis(text)
    assert b.commutative and len(b) == 4
    with pytest.raises(ParseError, match="line 2"):
        parse_basis("xy = yx\nx^0 = y\n")


def test_lattice_text(data_dir):
    names, covers = parse_lattice_text((data_dir / "n5.lat").read_text())
    assert names == ["0", "a", "b", "c", "1"]
    assert ("a", "c") in covers and ("b", "1") in covers
    with pytest.raises(ParseError):
        parse_lattice_text("elements: a b\nfoo: a < b\n")
