from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from antialg import catalog, derivations as der
from antialg.graded import GradedVector, Label, check_superalgebra, even, odd

HALF = Fraction(1, 2)


# dims frozen from scripts/derive_oracles.py (sympy, independent of the package)
@pytest.mark.parametrize("name, dims", [("asl2", (3, 2)), ("ah1:0", (4, 2)), ("ah1:1", (2, 2)),
                                        ("ah1:-2", (2, 2))])
def test_derivation_dims(name, dims):
    Der, ops = der.derivation_algebra(catalog.by_name(name))
    assert Der.dims == dims
    assert check_superalgebra(Der).ok


def test_odd_sign_minus_loses_odd_derivations():
    Der, _ = der.derivation_algebra(catalog.build_asl2(), odd_sign=-1)
    assert Der.dims == (3, 0)


def test_every_basis_operator_is_a_derivation():
    A = catalog.build_asl2()
    _, ops = der.derivation_algebra(A)
    for D in ops.values():
        assert der.derivation_defect(D, A).ok


def test_ad_eps_is_not_a_derivation():
    A = catalog.build_asl2()
    rep = der.derivation_defect(der.ad(A, even("eps")), A)
    assert rep.violations[0].witness == (even("eps"), even("eps"))
    assert rep.violations[0].defect == GradedVector({even("eps"): -1})


def test_abelian_derivations_are_gl():
    Der, _ = der.derivation_algebra(catalog.build_abelian(1, 0))
    assert Der.dims == (1, 0)
    Der, _ = der.derivation_algebra(catalog.build_abelian(0, 2))
    assert Der.dims == (4, 0)


def test_osp12_base_change():
    T, rep = der.der_asl2_base_change()
    assert rep.ok and rep.info["rank"] == 5
    assert len(T) == 5


def test_even_part_generates_four_dimensional_algebra():
    Der, _ = der.derivation_algebra(catalog.build_asl2())
    assert der.generated_algebra_dim(der.even_action_on_odd(Der)) == 4


def test_k1_action_small_window():
    assert der.check_K1_action(2).ok
    assert der.check_K1_action(2, odd_sign=-1).failed() == ["der:leibniz"]


indices = st.integers(-4, 4)


@given(indices, indices, indices)
def test_k1_operator_even_leibniz(n, m, k):
    # x_n acts by derivations on ]e_m, e_k[ = e_{m+k}
    A = catalog.build_AK1(20)
    X = der.k1_operator(Label("x", n))
    em, ek = even("e", m), even("e", k)
    assert X(A.mul(em, ek)) == A.product(X(em), ek) + A.product(em, X(ek))


def test_supercommutator_of_operators():
    a, b = der.k1_operator(odd("xi", HALF)), der.k1_operator(odd("xi", -HALF))
    c = der.supercommutator(a, b)
    rhs = der.k1_action(GradedVector({even("x", 0): 2}))
    for z in catalog.build_AK1(2).basis:
        assert c(z) == rhs(z)
