import json
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from antialg import catalog, representations as R
from antialg.graded import GradedVector, even, odd
from antialg.linalg import RatMatrix

HALF = Fraction(1, 2)


def test_D_squares_to_d_x():
    for lab in (R.mono(3), R.mono(-2, True), R.mono(0)):
        f = GradedVector.basis(lab)
        assert R.D(R.D(f)) == R.d_x(f)
        # D_bar anticommutes with D
        assert R.D(R.D_bar(f)) + R.D_bar(R.D(f)) == 0


def test_window_op_flags_escaping_columns():
    M = R.PolySuperModule(-1, 1)
    X = M.operator(lambda f: R.fmul(GradedVector.basis(R.mono(1)), f), 0)
    assert {M.basis[j] for j in X.bad} == {R.mono(1), R.mono(1, True)}
    assert M.interior() == [1, 4]
    with pytest.raises(ValueError):
        R.PolySuperModule(0, 2, margin=0)


def test_frep_calibration_unique():
    canon, wins = R.canonical_FRep_constants(window=1)
    assert canon == (HALF, HALF, -1)
    assert sorted(wins) == [(-HALF, HALF, -1), (HALF, HALF, -1)]


def test_frep_small_window():
    rep = R.build_FRep(2)
    assert R.check_rep(rep, columns=rep.module.interior()).ok
    # the printed sign of the odd-odd product admits no rational c_l
    bad = R.build_FRep(2, odd_sign=1)
    assert not R.check_rep(bad, columns=bad.module.interior()).ok


def test_frep_asl2_relations_and_casimir():
    rep = R.frep_asl2(2)
    assert R.check_rep(rep, columns=rep.module.interior()).ok
    E, A, B = R.asl2_operators(rep)
    cols = rep.module.interior()
    rel = R.check_asl2_rep(E, A, B, cols)
    assert rel.ok and rel.info["holds_on"] == sorted(cols)
    cas = R.casimir_check(E, A, B, cols)
    assert cas.ok and cas.info["columns"] == len(cols)


def test_half_projector_example_is_not_a_rep():
    # chi(eps) = P/2, chi(a) = chi(b) = 0 misses ]a,b[ = eps/2
    rep = R.finite_rep(catalog.build_asl2(), (1, 0), {even("eps"): RatMatrix(1, 1, {(0, 0): HALF})})
    r = R.check_rep(rep)
    assert r.failed() == ["eqRep"]
    assert {w for w in r.witnesses("eqRep")} == {(odd("a"), odd("b")), (odd("b"), odd("a"))}


def test_zero_rep_and_parity_guard():
    A = catalog.build_asl2()
    assert R.check_rep(R.finite_rep(A, (1, 1), {})).ok
    with pytest.raises(ValueError):
        R.finite_rep(A, (1, 1), {odd("a"): RatMatrix(2, 2, {(0, 0): 1})})


def test_extend_to_super():
    X, T, rep = R.extend_to_super(R.frep_asl2(2))
    assert rep.ok and T.dims == (3, 2)
    assert rep.checked["super-commutator"] == 25


def test_contact_fields():
    assert R.check_contact_K1(2).ok
    assert not R.check_contact_K1(2, form="printed").ok


def test_contact_calibration():
    wins = R.calibrate_contact(1)
    assert sorted(wins, key=lambda w: w[2]) == [((HALF, "D_bar"), 1, -2), ((HALF, "D_bar"), 1, 2)]


def test_certificate_rejects_non_solutions():
    E = RatMatrix(2, 2, {(0, 0): 1})
    with pytest.raises(ValueError):
        R.finite_triviality_certificate(E, RatMatrix(2, 2), RatMatrix(2, 2))
    cert = R.finite_triviality_certificate(RatMatrix(2, 2), RatMatrix(2, 2), RatMatrix(2, 2))
    assert cert.holds and len(cert.steps) == 6


@given(st.integers(0, 3), st.integers(0, 3), st.integers(0, 10 ** 6))
def test_fuzzed_solutions_are_trivial(d0, d1, seed):
    found, certs, rejected = R.fuzz_systemrep2(d0, d1, trials=5, seed=seed)
    assert len(found) + rejected == 5
    for (E, A, B), cert in zip(found, certs):
        assert cert.holds
        assert E.is_zero() and A.is_zero() and B.is_zero()


def test_rep_json_roundtrip(tmp_path):
    from antialg.cli import load_rep
    rep = R.frep_asl2(1)
    p = tmp_path / "r.json"
    p.write_text(json.dumps(rep.to_json()))
    back = load_rep(p, catalog.build_asl2())
    assert all(back.chi[l].matrix == rep.chi[l].matrix for l in rep.chi)
