import json
from itertools import product

import pytest

from conftest import corpus_basis
from oracles import relfree_classes
from varlat import relfree
from varlat.errors import PreconditionError, ResourceLimitError
from varlat.syntax import Equation, Word, ZeroReduced
from varlat.textio import parse_basis_inline, parse_comword, parse_identity
from varlat.zerored import ZeroSystem, holds_in_zero_system

B = parse_basis_inline
I = parse_identity


def partition_of(F):
    return {frozenset(F.carrier.vector(c) for c in group) for group in F.classes()}


# (basis text, oracle identities, a, b, k)
ORACLE_CASES = [
    ("xy = yx, x^3 = 0", [((3,), None)], 3, 1, 2),
    ("xy = yx, x^2 = 0", [((2,), None)], 2, 1, 2),
    ("xy = yx, x^2y = 0", [((2, 1), None)], 3, 1, 2),
    ("xy = yx, x^2 = x^3, x^2y = xy^2", [((2,), (3,)), ((2, 1), (1, 2))], 2, 1, 2),
    ("xy = yx, x^3y = y", [((3, 1), (0, 1))], 1, 3, 2),
    ("xy = yx, x^2 = x^3", [((2,), (3,))], 2, 1, 2),
    ("xy = yx, x^2 = x^4", [((2,), (4,))], 2, 2, 2),
    ("xy = yx, x^2y = y^2x, x^4 = 0", [((2, 1), (1, 2)), ((4,), None)], 4, 1, 2),
    ("xy = yx, x = x^2", [((1,), (2,))], 1, 1, 3),
    ("xy = yx, x^5 = 0, x^3y^2 = y^3x^2", [((5,), None), ((3, 2), (2, 3))], 5, 1, 2),
]


@pytest.mark.parametrize("text, ids, a, b, k", ORACLE_CASES)
def test_partition_matches_oracle(text, ids, a, b, k):
    F = relfree.build_on_base(B(text), relfree.PeriodicBase(a, b, k))
    expected = {frozenset(c) for c in relfree_classes(ids, a, b, k).values()}
    assert partition_of(F) == expected


def test_class_counts():
    assert relfree.build_relfree(B("xy = yx, x^3 = 0"), 2).n_classes == 9
    # frozen from the brute-force oracle (8 s there, so not recomputed here)
    assert relfree.build_relfree(corpus_basis("example1"), 2).n_classes == 7
    assert relfree.build_relfree(corpus_basis("example2"), 2).n_classes == 19


def test_holds_example_facts(example1, example2):
    assert relfree.holds(example1, I("x^2y^2 = 0"))
    assert not relfree.holds(example1, I("x^2y = 0"))
    assert relfree.holds(example1, I("xy^2 = x^2y"))
    assert relfree.holds(example2, I("x^4y^3 = 0"))
    assert not relfree.holds(example2, I("x^3y^3 = 0"))
    assert relfree.holds(example2, I("x^4y^2 = x^2y^4"))
    assert not relfree.holds(example2, I("x^3y^2 = 0"))
    assert relfree.holds(example2, I("xy = yx"))


def test_is_nil_and_zero_reduced(example1, example2):
    assert relfree.is_nil(example1) == 3
    assert relfree.is_nil(example2) == 5
    assert relfree.is_nil(B("xy = yx, x^2 = x^3")) is None
    assert relfree.is_nil(corpus_basis("A3")) is None
    assert not relfree.is_zero_reduced_in_com(example1)
    assert not relfree.is_zero_reduced_in_com(example2)
    assert relfree.is_zero_reduced_in_com(B("xy = yx, x^3 = 0, x^2y = y^2x^2"))
    with pytest.raises(PreconditionError):
        relfree.is_zero_reduced_in_com(B("xy = yx, x^2 = x^3"))


def test_base_exponents():
    assert relfree.base_exponents(B("xy = yx, x^2 = x^3")) == (2, 1)
    # x^2 = x^6 and x^3 = x^5 together give period 2 at index 2
    assert relfree.base_exponents(B("xy = yx, x^2 = x^6, x^3 = x^5")) == (2, 2)
    with pytest.raises(PreconditionError):
        relfree.base_exponents(B("xy = yx"))


def test_zr_truncation(example1):
    zs = relfree.zr_truncation(example1, 4)
    # x^2y^2 = 0 follows from xyzq = 0 via x, y -> x and z, q -> y
    assert set(zs.generators) == {parse_comword("x^3"), parse_comword("xyzq")}
    assert set(relfree.zr_truncation(B("xy = yx, x^2y = 0"), 6, 2).generators) == {parse_comword("x^2y")}


def test_substitutive_identities(example2):
    subs = relfree.substitutive_identities(example2, 2)
    pairs = {frozenset((e.lhs.parikh, e.rhs.parikh)) for e in subs}
    assert frozenset((parse_comword("x^3y^2"), parse_comword("x^2y^3"))) in pairs
    for e in subs:
        assert relfree.holds(example2, e)
        assert e.lhs.parikh.multiplicities == e.rhs.parikh.multiplicities


ZERO_BASES = ["x^3 = 0", "x^2y = 0", "xy = 0", "x^2 = 0, xyz = 0"]


@pytest.mark.parametrize("zeros", ZERO_BASES)
def test_agrees_with_zero_system(zeros):
    basis = B("xy = yx, " + zeros)
    system = ZeroSystem(tuple(i.word.parikh for i in basis if isinstance(i, ZeroReduced)))
    words = [Word(tuple(sorted(sum(([a + 1] * e for a, e in enumerate(v)), []))))
             for v in product(range(4), repeat=2) if 0 < sum(v) <= 4]
    for u in words:
        assert relfree.holds(basis, ZeroReduced(u)) == holds_in_zero_system(system, ZeroReduced(u))
        for v in words:
            eq = Equation(u, v)
            assert relfree.holds(basis, eq) == holds_in_zero_system(system, eq)


def test_verify_join_identity(example1, example2):
    assert relfree.verify_join_identity(example1, 3, 2)
    assert relfree.verify_join_identity(example2, 5, 2)
    with pytest.raises(PreconditionError):
        relfree.verify_join_identity(example1, 2, 2)


def test_carrier_cap():
    with pytest.raises(ResourceLimitError, match="resource limit"):
        relfree.build_relfree(B("xy = yx, x^3 = 0"), 3, carrier_cap=10)


def test_non_commutative_rejected():
    with pytest.raises(PreconditionError):
        relfree.build_relfree(parse_basis_inline("x^2 = x^3"), 1)


def test_disk_cache_round_trip(tmp_path):
    basis = B("xy = yx, x^2y = y^2x, x^4 = 0")
    relfree.set_cache_dir(tmp_path)
    try:
        relfree.clear_memo()
        fresh = relfree.build_relfree(basis, 2)
        files = list(tmp_path.glob("*.json"))
        assert files and json.loads(files[0].read_text())["k"] in (1, 2)
        relfree.clear_memo()
        cached = relfree.build_relfree(basis, 2)
        assert cached.labels == fresh.labels and cached.zero == fresh.zero
    finally:
        relfree.set_cache_dir(None)
        relfree.clear_memo()


def test_normal_form_ignores_renaming_and_sides():
    a = B("xy = yx, x^2y = y^3, x^4 = 0")
    b = B("xy = yx, y^4 = 0, x^3 = y^2x")
    assert relfree.normal_form(a) == relfree.normal_form(b)
    assert relfree.normal_form(a) != relfree.normal_form(B("xy = yx, x^4 = 0"))
