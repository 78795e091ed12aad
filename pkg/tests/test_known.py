import pytest

from varlat import known
from varlat.errors import ParseError, PreconditionError
from varlat.syntax import Basis
from varlat.textio import parse_basis_inline, parse_identity

I = parse_identity


@pytest.mark.parametrize("identity, K, expected", [
    ("xy = xz", known.LZ, True),
    ("xy = yx", known.LZ, False),
    ("xy = zy", known.RZ, True),
    ("x^2 = x", known.SL, True),
    ("xy = y", known.SL, False),
    ("x^3y = y", known.A(3), True),
    ("x^2y = y", known.A(3), False),
    ("xy = yx", known.COM, True),
    ("x^2y = yx", known.COM, False),
    ("x = y", known.T, True),
    # P: same content and the last letters agree, or both occur more than once
    ("xy = x^2y", known.P, True),
    ("xy^2 = yxy", known.P, True),
    ("xy = yx", known.P, False),
    ("xy = xy^2", known.P, False),
    ("xy = xy^2", known.PDUAL, True),
    ("yx = y^2x", known.PDUAL, False),
    ("x^2 = 0", known.SL, False),
    ("x^2 = 0", known.T, True),
    ("xy = 0", known.LZ, False),
])
def test_holds_in(identity, K, expected):
    assert known.holds_in(I(identity), K) is expected


def test_parse_names():
    assert known.KnownVariety.parse("A3") == known.A(3)
    assert known.KnownVariety.parse("A(5)") == known.A(5)
    assert known.KnownVariety.parse("Pdual") == known.PDUAL
    with pytest.raises(ParseError):
        known.KnownVariety.parse("Q")
    with pytest.raises(PreconditionError):
        known.A(0)


def test_containment_and_monoid_precondition():
    b = parse_basis_inline("xy = yx, x^2 = x^3")
    assert known.contained_in_var(known.SL, b)
    assert not known.contained_in_var(known.LZ, b)
    assert known.monoid_nil_precondition(b)
    assert not known.monoid_nil_precondition(Basis.of(I("x^2 = x")))


@pytest.mark.parametrize("K", [known.T, known.SL, known.LZ, known.RZ, known.P, known.PDUAL, known.COM, known.A(4)])
def test_presentation_is_satisfied(K):
    assert known.contained_in_var(K, known.presentation(K))
