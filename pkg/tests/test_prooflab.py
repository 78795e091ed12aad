from itertools import combinations

import pytest
from hypothesis import given, settings, strategies as st

import oracles
from varlat import known
from varlat import prooflab as P
from varlat.errors import PreconditionError
from varlat.syntax import Word, is_balanced, sem_equivalent
from varlat.textio import parse_basis_inline, parse_word


def vec(w, r=3):
    return tuple(w.count(a) for a in range(1, r + 1))


@pytest.mark.parametrize("n,m", [(n, m) for n in range(2, 5) for m in range(1, 3)])
@pytest.mark.parametrize("variant", ["main", "primed"])
def test_proposition_words_checks(n, m, variant):
    fam = P.proposition_words(n, m, variant)
    assert fam.passed, fam.checks
    u, v, s, t = fam.words
    # u = v and s = t hold modulo x^n = x^(n+m): exponents agree after folding
    r = 4 if variant == "main" else 3
    assert oracles.fold(vec(u, r), n, m) == oracles.fold(vec(v, r), n, m)
    assert oracles.fold(vec(s, r), n, m) == oracles.fold(vec(t, r), n, m)
    if variant == "primed":
        # the main words are COM-stable and may collapse, e.g. z^n = z^(n+1) when m = 1
        assert oracles.fold(vec(u, r), n, m) != oracles.fold(vec(s, r), n, m)


def test_proposition_words_shape():
    fam = P.proposition_words(2, 1)
    assert [str(w) for w in fam.words] == ["xy^9z^2q", "xy^7z^4q", "qy^8z^3x", "qy^6z^5x"]
    assert fam.notes[0].startswith("4 of 4 words are COM-stable")
    assert fam.identity().lhs == fam.u
    primed = P.proposition_words(2, 1, "primed")
    assert [str(w) for w in primed.words] == ["x^8y^4z", "x^7y^5z", "x^7y^4z^2", "x^6y^5z^2"]
    with pytest.raises(PreconditionError):
        P.proposition_words(1, 1)
    with pytest.raises(PreconditionError):
        P.proposition_words(2, 1, "other")


def test_main_identity_fails_in_small_varieties():
    eq = P.proposition_words(3, 2).identity()
    for K in (known.LZ, known.RZ, known.P, known.PDUAL):
        assert not known.holds_in(eq, K)


def test_erase_letters():
    w = parse_word("xyzyx")
    assert P.erase_letters(w, (2,)) == parse_word("xzx")
    assert P.erase_letters(w, (1, 2, 3)) is None


balanced = st.lists(st.integers(1, 3), min_size=2, max_size=7).flatmap(
    lambda ls: st.permutations(ls).map(lambda p: (Word(tuple(ls)), Word(tuple(p)))))


@settings(max_examples=80, deadline=None)
@given(balanced)
def test_corollary_words(pair):
    w1, w2 = pair
    if w1 == w2:
        with pytest.raises(PreconditionError):
            P.corollary_words(w1, w2)
        return
    fam, pos = P.corollary_words(w1, w2)
    assert fam.passed
    assert w1[pos - 1] != w2[pos - 1] and w1.letters[:pos - 1] == w2.letters[:pos - 1]
    assert not is_balanced(fam.identity())
    for a, b in combinations(fam.words, 2):
        assert sem_equivalent(a, b) is None


def test_corollary_rejects_unbalanced():
    with pytest.raises(PreconditionError):
        P.corollary_words(parse_word("xy"), parse_word("xx"))


def test_gamma_partition_counts():
    g = P.gamma_partition(parse_word("x^4y"), parse_word("x^3y^2"), 6)
    assert g.passed and g.failures == []
    assert g.alphabet == (1, 2, 3)
    # words of length 6 over 3 letters, plus x^5, y^5, z^5
    assert len(g.sink) == len(list(oracles.vectors(3, 6, 6))) + 3 == 31
    assert len(g.pairs) == 6
    assert g.class_of((4, 1, 0)) == g.class_of((3, 2, 0))
    assert g.class_of((0, 0, 6)) == "sink"


def gamma_inputs():
    out = []
    for ell in range(3, 6):
        for r in (2, 3):
            vs = [v for v in oracles.vectors(r, ell, ell) if 0 not in v and len(set(v)) == r]
            for a, b in combinations(vs, 2):
                if sorted(a) != sorted(b):
                    out.append((a, b, ell))
    return out


@pytest.mark.parametrize("a,b,ell", gamma_inputs())
def test_gamma_partition_audits(a, b, ell):
    from varlat.syntax import ComWord
    U = ComWord(tuple((i + 1, e) for i, e in enumerate(a)))
    S = ComWord(tuple((i + 1, e) for i, e in enumerate(b)))
    for L in range(ell + 1, 8):
        assert P.gamma_partition(U, S, L).passed


def test_gamma_partition_errors():
    with pytest.raises(PreconditionError, match="equivalent"):
        P.gamma_partition(parse_word("x^2y"), parse_word("xy^2"), 5)
    with pytest.raises(PreconditionError, match="COM-stable"):
        P.gamma_partition(parse_word("x^2y^2"), parse_word("x^3y"), 6)
    with pytest.raises(PreconditionError, match="length"):
        P.gamma_partition(parse_word("x^2y"), parse_word("x^3y"), 6)
    with pytest.raises(PreconditionError, match="bound"):
        P.gamma_partition(parse_word("x^4y"), parse_word("x^3y^2"), 5)


def test_key_lemma_instance():
    basis = parse_basis_inline("xy=yx, x^2=x^4")
    r = P.key_lemma_instance(*P.proposition_words(2, 2, "primed").words, basis)
    assert not r and r.identity.lhs == parse_word("x^10y^4z")
    with pytest.raises(PreconditionError, match="fails in the variety"):
        P.key_lemma_instance(*P.proposition_words(2, 1, "primed").words, basis)
    with pytest.raises(PreconditionError, match="COM-stable"):
        P.key_lemma_instance(*P.proposition_words(2, 2).words, basis)


def test_search_quadruples_against_fold():
    basis = parse_basis_inline("xy=yx, x^2=x^3")
    res = P.search_quadruples(basis, 11)
    assert (res.examined, res.admissible, len(res.falsifying)) == (23664, 1344, 1296)
    for u, v, s, t in res.falsifying:
        f = [oracles.fold(vec(w), 2, 1) for w in (u, v, s, t)]
        assert f[0] == f[1] and f[2] == f[3] and f[0] != f[2]


def test_search_quadruples_nil_has_no_falsifier(example2):
    res = P.search_quadruples(example2, 10)
    assert res.admissible == res.examined > 0 and res.falsifying == []
