import pytest
from hypothesis import given
from hypothesis import strategies as st

from oracles import com_equivalent as oracle_com_equivalent
from varlat.errors import PreconditionError
from varlat.syntax import (
    Basis,
    ComWord,
    Equation,
    Word,
    ZeroReduced,
    apply_substitution,
    com_equivalent,
    is_balanced,
    is_stable,
    is_substitutive,
    nil_zero_consequences,
    periodicity_exponents,
    sem_equivalent,
    word_profile,
)
from varlat.textio import parse_basis_inline, parse_identity, parse_word

W = parse_word

words = st.lists(st.integers(1, 3), min_size=1, max_size=7).map(lambda xs: Word(tuple(xs)))


def test_word_basics():
    w = W("x^2yzx")
    assert w.length == 5
    assert w.content == {1, 2, 3}
    assert (w.head, w.tail) == (1, 1)
    assert w.count(1) == 3
    assert str(w) == "x^2yzx"
    assert str(w.parikh) == "x^3yz"
    with pytest.raises(PreconditionError):
        Word(())


def test_comword_order_and_arithmetic():
    a, b = ComWord.of(x=2, y=1), ComWord.of(x=3, y=1)
    assert a <= b and a < b and not b <= a
    assert a + ComWord.of(z=1) == ComWord.of(x=2, y=1, z=1)
    assert a.scaled(2) == ComWord.of(x=4, y=2)
    assert a.multiplicities == (2, 1)


def test_profile():
    p = word_profile(W("xyx"))
    assert p.length == 3 and p.head == p.tail == 1
    assert p.multiplicities == {1: 2, 2: 1}


def test_substitution_word_and_comword():
    sigma = {1: W("y"), 2: W("xz")}
    assert apply_substitution(W("xyx"), sigma) == W("yxzy")
    assert apply_substitution(W("xyx").parikh, sigma) == ComWord.of(x=1, y=2, z=1)
    with pytest.raises(PreconditionError, match="substitution incomplete"):
        apply_substitution(W("xyz"), sigma)


def test_sem_and_com_equivalence():
    assert sem_equivalent(W("xyx"), W("yxy")) == {2: 1, 1: 2}
    assert sem_equivalent(W("xyx"), W("xxy")) is None
    assert com_equivalent(W("x^2y"), W("xy^2")) is not None
    assert com_equivalent(W("x^2y"), W("xy")) is None


@given(words, words)
def test_com_equivalence_matches_oracle(u, v):
    pad = lambda w: tuple(w.parikh.count(a) for a in (1, 2, 3))
    assert (com_equivalent(u, v) is not None) == oracle_com_equivalent(pad(u), pad(v))


@given(words, words)
def test_com_equivalence_renaming_is_a_witness(u, v):
    pi = com_equivalent(u, v)
    if pi is not None:
        assert v.parikh.rename(pi) == u.parikh


def test_stability():
    assert is_stable(W("xy")) is not None
    assert is_stable(W("x^2y")) is None
    assert is_stable(W("xy^9z^2q")) is not None  # x and q both occur once
    assert is_stable(W("xy"), "SEM") is None
    with pytest.raises(PreconditionError):
        is_stable(W("xy"), "FOO")


def test_balanced_and_substitutive():
    assert is_balanced(parse_identity("xy^2 = y^2x"))
    assert not is_balanced(parse_identity("x^2y = y^2x"))
    assert is_substitutive(parse_identity("x^2y = y^2x")).sem  # positional x <-> y
    r = is_substitutive(parse_identity("x^2y = xy^2"))
    assert r is not None and r.com and not r.sem
    assert is_substitutive(parse_identity("xy = yx")).sem
    assert is_substitutive(parse_identity("x^2 = xy")) is None
    with pytest.raises(PreconditionError, match="not an equation"):
        is_balanced(ZeroReduced(W("x")))


def test_nil_zero_consequences():
    out = nil_zero_consequences(parse_identity("x^2 = xy"))
    assert out == {ZeroReduced(W("x^2")), ZeroReduced(W("xy"))}
    assert nil_zero_consequences(parse_identity("x^2y = x^2yx"), commutative=True) == {ZeroReduced(W("x^2y"))}
    assert nil_zero_consequences(parse_identity("xy = yx")) == frozenset()


@pytest.mark.parametrize("text, expected", [
    ("xy = yx, x^2 = x^3", (2, 1)),
    ("xy = yx, x^3 = 0", (3, 1)),
    ("xy = yx, x^3y = y", (1, 3)),
    ("xy = yx", None),
])
def test_periodicity_exponents(text, expected):
    assert periodicity_exponents(parse_basis_inline(text)) == expected


def test_basis_detects_commutativity():
    b = Basis.of(Equation(W("yx"), W("xy")), ZeroReduced(W("x^2")))
    assert b.commutative
    assert not Basis.of(ZeroReduced(W("x^2"))).commutative
    assert Basis.commutative_with().max_letters() == 2
