from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from antialg import catalog, superization as sup
from antialg.graded import GradedVector, Label, check_superalgebra, odd

a, b = odd("a"), odd("b")


def s(i, j):
    return Label("s:(%s,%s)" % (i, j))


# oracle dims from scripts/derive_oracles.py
@pytest.mark.parametrize("name, dims", [("asl2", (3, 2)), ("ah1:0", (3, 2)), ("ah1:1", (2, 2)),
                                        ("ah1:-2", (2, 2))])
def test_superize_dims_and_jacobi(name, dims):
    A = catalog.by_name(name)
    T, S, wd = sup.superize(A)
    assert T.dims == dims
    assert sup.quotient_rank_oracle(A) == dims[0]
    assert check_superalgebra(T).ok
    assert wd.ok


def test_odd_brackets_match_symmetric_product():
    G = sup.Superization(catalog.build_asl2())
    assert G.bracket(a, b) == GradedVector({s("a", "b"): 1})
    assert G.bracket(a, a) == GradedVector({s("a", "a"): 2})


def test_calibration_picks_half_sum_only():
    wins = sup.calibrate_superization()
    assert {c.sym for c in wins} == {"half-sum"}
    # Jacobi does not see the odd-odd scale
    assert {c.odd_factor for c in wins} == {1, 2, Fraction(1, 2)}


@pytest.mark.parametrize("sym", ["sum", "average"])
def test_other_weights_fail_jacobi(sym):
    T, _, _ = sup.superize(catalog.build_asl2(), sup.SuperizeConfig(sym))
    assert not check_superalgebra(T).ok


def test_superize_asl2_is_osp12():
    T, _, _ = sup.superize(catalog.build_asl2())
    assert sup.find_isomorphism(T, catalog.build_osp12()) is not None


def test_compare_to_derivations():
    info = sup.compare_to_derivations(catalog.build_asl2()).info
    assert info["isomorphism"] is not None
    info = sup.compare_to_derivations(catalog.build_ah1(0)).info
    assert info["dims"] == {"superization": [3, 2], "derivations": [4, 2]}
    assert info["isomorphism"] is None


def test_rejects_non_antialgebra():
    A, _ = catalog.mutation_catalog()["ICommT"]
    with pytest.raises(ValueError):
        sup.superize(A)


@given(st.fractions(min_value=-6, max_value=6, max_denominator=5))
def test_superize_ah1_family(kappa):
    A = catalog.build_ah1(kappa)
    T, _, wd = sup.superize(A)
    assert check_superalgebra(T).ok and wd.ok
    assert T.dims[0] == sup.quotient_rank_oracle(A) == (3 if kappa == 0 else 2)


@given(st.integers(0, 2), st.integers(1, 3))
def test_superize_abelian(n_even, n_odd):
    T, _, wd = sup.superize(catalog.build_abelian(n_even, n_odd))
    assert T.dims == (n_odd * (n_odd + 1) // 2, n_odd)
    assert check_superalgebra(T).ok
