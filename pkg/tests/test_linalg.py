from fractions import Fraction

import pytest
import sympy
from hypothesis import given, strategies as st

from antialg.linalg import RatMatrix, as_rational, kernel_basis, quotient, rank, solve

small = st.fractions(min_value=-3, max_value=3, max_denominator=4)


@st.composite
def matrices(draw, max_rows=5, max_cols=5):
    r = draw(st.integers(1, max_rows))
    c = draw(st.integers(1, max_cols))
    # sparse-ish: many zeros keep kernels nontrivial
    rows = draw(st.lists(st.lists(st.one_of(st.just(Fraction(0)), small), min_size=c, max_size=c),
                         min_size=r, max_size=r))
    return RatMatrix.from_rows(rows, c)


def test_as_rational_rejects_floats():
    assert as_rational("3/4") == Fraction(3, 4)
    assert as_rational(2) == 2
    with pytest.raises(TypeError):
        as_rational(0.5)


def test_basic_ops():
    A = RatMatrix.from_rows([[1, 2], [3, 4]])
    B = RatMatrix.identity(2)
    assert A @ B == A
    assert (A - A).is_zero()
    assert A.T[0, 1] == 3
    assert A @ [1, 1] == [3, 7]
    assert A.trace() == 5
    with pytest.raises(ValueError):
        A @ RatMatrix.zeros(3, 1)
    with pytest.raises(IndexError):
        RatMatrix(2, 2, {(2, 0): 1})


@given(matrices())
def test_rank_matches_sympy(M):
    assert rank(M) == sympy.Matrix(M.to_rows()).rank()


@given(matrices())
def test_rank_nullity(M):
    K = kernel_basis(M)
    assert rank(M) + len(K) == M.cols
    for v in K:
        assert all(x == 0 for x in M @ v)


@given(matrices(), st.lists(small, min_size=5, max_size=5))
def test_solve_consistent(M, x):
    b = M @ x[:M.cols]
    sol = solve(M, b)
    assert sol is not None
    assert M @ sol == b


def test_solve_inconsistent():
    M = RatMatrix.from_rows([[1, 1], [2, 2]])
    assert solve(M, [1, 3]) is None


@given(st.integers(1, 5), st.lists(st.lists(small, min_size=5, max_size=5), max_size=4))
def test_quotient_kills_relations(n, rels):
    rels = [r[:n] for r in rels]
    Q = quotient(n, rels)
    assert Q.dim == n - (sympy.Matrix(rels).rank() if rels else 0)
    for r in rels:
        assert all(x == 0 for x in Q.project(r))
    # section then projection is the identity on quotient coordinates
    for k in range(Q.dim):
        e = [Fraction(int(i == k)) for i in range(Q.dim)]
        assert Q.project(Q.lift(e)) == e


def test_deterministic_pivots():
    M = RatMatrix.from_rows([[0, 2, 4], [1, 1, 1], [1, 3, 5]])
    assert kernel_basis(M) == kernel_basis(M)
    assert kernel_basis(M) == [[Fraction(1), Fraction(-2), Fraction(1)]]
