from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from antialg import associator as asc, catalog
from antialg.graded import GradedVector, even, odd

HALF = Fraction(1, 2)


@pytest.mark.parametrize("A", [catalog.build_asl2(), catalog.build_ah1(0), catalog.build_ah1(1),
                               catalog.build_ah1(-2), catalog.build_AK1(2)], ids=lambda A: A.name)
def test_skew_equivalence_catalog(A):
    rep = asc.skew_equivalence(asc.bracket_to_m(A))
    assert rep.ok


def test_bracket_m_roundtrip():
    A = catalog.build_ah1(3)
    m = asc.bracket_to_m(A)
    assert not m.shape_violations()
    assert asc.m_to_bracket(m).table == A.table
    eps = even("eps")
    assert asc.bracket_to_m(catalog.build_asl2())(eps, eps) == GradedVector({eps: HALF})


def test_split_shape_enforced():
    m = asc.bracket_to_m(catalog.build_asl2())
    bad = asc.perturb(m, {(odd("a"), even("eps")): {odd("a"): 1}})
    assert ("WxV=0", (odd("a"), even("eps"))) in bad.shape_violations()
    with pytest.raises(ValueError):
        asc.m_to_bracket(bad)


def test_gerstenhaber_square_of_associative_map():
    # m(x, y) = x y on the basis {1, t} of K[t]/t^2 is associative
    one, t = even("1"), even("t")
    m = asc.full_map("dual numbers", [one, t], {(one, one): {one: 1}, (one, t): {t: 1},
                                                 (t, one): {t: 1}})
    assert asc.gerstenhaber_square(m) == {}
    # 1.1 = 2: (1 1) t = 2t but 1 (1 t) = t
    m2 = asc.perturb(m, {(one, one): {one: 2}})
    assert asc.gerstenhaber_square(m2)[(one, one, t)] == GradedVector({t: 1})


@pytest.mark.parametrize("ident", ["AssCommT", "CacT", "ICommT", "Jack"])
def test_targeted_perturbation_pairs(ident):
    A, witness = catalog.mutation_catalog()[ident]
    rep = asc.skew_equivalence(asc.bracket_to_m(A))
    split = {v: k for k, v in asc.PAIRED_AXIOM.items()}[ident]
    assert rep.failed() == sorted([ident, split])
    shared = set(rep.witnesses(ident)) & set(rep.witnesses(split))
    assert witness in shared or any(set(witness) == set(w) for w in shared)


eps, a, b = even("eps"), odd("a"), odd("b")
coef = st.sampled_from([Fraction(0), Fraction(1), Fraction(-1), HALF, Fraction(2)])


@st.composite
def split_perturbations(draw):
    """Random split-shaped values for every entry of m(asl2)."""
    c = lambda: draw(coef)
    ab_ = c()
    return {
        (eps, eps): {eps: c()},
        (eps, a): {a: c(), b: c()},
        (eps, b): {a: c(), b: c()},
        (a, b): {eps: ab_}, (b, a): {eps: -ab_},
    }


@given(split_perturbations())
def test_pairing_is_triple_by_triple(entries):
    m = asc.perturb(asc.bracket_to_m(catalog.build_asl2()), entries)
    rep = asc.skew_equivalence(m)
    assert not [v for v in rep.violations if v.identity.startswith("pairing:")]
