from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from antialg import catalog, geometry as G
from antialg.graded import Label, sign
from antialg.superization import find_isomorphism

HALF = Fraction(1, 2)
mons = G.monomials(2)
monomial = st.sampled_from(mons)
ak1_label = st.one_of(st.integers(-4, 4).map(lambda n: Label("e", n)),
                      st.integers(-4, 3).map(lambda k: Label("l", Fraction(2 * k + 1, 2), True)))


def test_superfunction_arithmetic():
    assert G.TAU * G.TAU == 0
    assert str(G.P_ * G.Q_ * 3 + G.TAU * HALF) == "3 p q + 1/2 τ"
    assert str(G.taylor(Label("l", Fraction(3, 2), True))) == "1 p^-1 q^2"
    assert (G.P_ * G.P_).d("p") == G.P_ * 2
    with pytest.raises(ValueError):
        G.SuperFunction({(0, 0, 2): 1})


@given(ak1_label)
def test_taylor_basis_has_euler_degree_one(lab):
    F = G.taylor(lab)
    assert G.euler_degree(F) == 1
    assert G.EULER(F) == F


def test_taylor_reproduces_ak1():
    assert G.verify_taylor(3).ok


def test_calibration_selects_one_convention():
    wins, scores = G.calibrate_geometry(3)
    assert wins == [G.CALIBRATED]
    taylor_ok = sorted((c for c, (t, _) in scores.items() if t), key=str)
    assert taylor_ok == sorted([G.Convention(1, "YX", True), G.Convention(-1, "XY", False)], key=str)


def test_two_taylor_conventions_differ_off_F1():
    other = G.Convention(-1, "XY", False)
    F, H = G.Q_ * G.TAU, G.TAU
    assert G.anti_bracket(F, H, G.CALIBRATED) != G.anti_bracket(F, H, other)


def test_linear_functions_give_asl2():
    rep = G.linear_asl2()
    assert rep.ok
    assert rep.info["identification"] == {"eps": "1 τ", "a": "1 p", "b": "-1 q"}


def test_quadratics_form_osp12():
    Q = G.quadratic_superalgebra()
    assert Q.dims == (3, 2)
    assert find_isomorphism(Q, catalog.build_osp12()) is not None


@given(monomial, monomial)
def test_poisson_super_antisymmetry(F, H):
    s = sign(F.parity() * H.parity())
    assert G.poisson_bracket(F, H) == -G.poisson_bracket(H, F) * s


@given(monomial, monomial, monomial)
def test_poisson_super_jacobi(F, H, K):
    pb = G.poisson_bracket
    s = sign(F.parity() * H.parity())
    assert pb(F, pb(H, K)) == pb(pb(F, H), K) + pb(H, pb(F, K)) * s


@given(ak1_label, ak1_label)
def test_anti_bracket_symmetry_on_F1(x, y):
    # SkewP on the Taylor basis, with the parity of the AK(1) labels
    # (e_n is an odd function but an even element)
    F, H = G.taylor(x), G.taylor(y)
    assert G.anti_bracket(F, H) == G.anti_bracket(H, F) * sign(x.parity * y.parity)


def test_invariance_low_degree():
    assert G.check_invariance(G.POISSON, max_degree=2).ok
    assert G.check_invariance(G.LAMBDA, max_degree=2).ok


def test_translation_breaks_lambda_only():
    X = {"d/dp": G.SuperVectorField({"p": G.ONE}, 0)}
    assert not G.check_invariance(G.LAMBDA, fields=X, max_degree=2).ok
    assert G.check_invariance(G.POISSON, fields=X, max_degree=2).ok


def test_lie_derivative_needs_koszul_sign():
    # dropping (-1)^{p(X)p(B)} breaks invariance of Lambda under an odd field
    X = G.osp12_fields()["pτ"]
    F, H = G.Q_, G.P_
    ok = G.lie_derivative_defect(X, G.LAMBDA, F, H)
    raw = (X(G.LAMBDA.pair(F, H)) - G.LAMBDA.pair(X(F), H)
           - G.LAMBDA.pair(F, X(H)) * sign(X.parity * F.parity()))
    assert ok == 0 and raw != 0


def test_invariant_space_degree_one():
    basis = G.invariant_bivector_space(1)
    assert len(basis) == 2
    assert G.in_span(basis, [G.POISSON, G.LAMBDA])


def test_invariant_space_by_parity():
    (even_b,) = G.invariant_bivector_space(1, parity=0)
    (odd_b,) = G.invariant_bivector_space(1, parity=1)
    assert G.in_span([even_b], [G.POISSON])
    assert G.in_span([odd_b], [G.LAMBDA])


def test_pq_only_at_bound_zero():
    pq = (("p", "q"),)
    assert G.invariant_bivector_space(0, pairs=pq) == []
    even = {k: X for k, X in G.osp12_fields().items() if X.parity == 0}
    assert len(G.invariant_bivector_space(0, pairs=pq, fields=even)) == 1


def test_hamiltonian_fields_parity():
    for X in G.osp12_fields().values():
        assert X.parity_ok()
    with pytest.raises(ValueError):
        G.hamiltonian_field(G.P_ + G.TAU)
