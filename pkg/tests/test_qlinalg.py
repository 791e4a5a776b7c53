from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from retorix.qlinalg import QuotientError, nullspace, quotient_basis, rank_q, rref_q, sparse_rank

F = Fraction

small_ints = st.integers(-3, 3)


@st.composite
def int_matrices(draw, max_rows=5, max_cols=5):
    r = draw(st.integers(1, max_rows))
    c = draw(st.integers(1, max_cols))
    return draw(st.lists(st.lists(small_ints, min_size=c, max_size=c), min_size=r, max_size=r))


def test_rref_examples():
    assert rref_q([[2, 4], [1, 2]]).rank == 1
    assert rref_q([[int(i == j) for j in range(4)] for i in range(4)]).rank == 4
    assert rref_q([[1, F(1, 2)], [F(1, 3), F(1, 6)]]).rank == 1


def test_pivots_are_first_nonzero():
    red = rref_q([[0, 2, 4], [0, 0, 3]])
    assert red.pivots == [1, 2]
    assert red.rows[0][1] == 1


def test_quotient_examples():
    e1, e2 = [1, 0], [0, 1]
    q = quotient_basis([e1, e2], [e1])
    assert q.representatives == [[F(0), F(1)]]
    assert q.coordinates([1, 1]) == [F(1)]
    q0 = quotient_basis([e1, e2], [e1, e2])
    assert len(q0) == 0 and q0.coordinates([3, 4]) == []
    q3 = quotient_basis([[1, 0, 0], [0, 1, 0], [1, 1, 0]], [[1, 1, 0]])
    assert len(q3) == 1
    assert q3.representatives[0] == [1, 0, 0]
    assert q3.coordinates([1, 0, 0]) == [F(1)]
    assert q3.coordinates([0, 1, 0]) == [F(-1)]


def test_quotient_errors():
    with pytest.raises(QuotientError):
        quotient_basis([[1, 0]], [[0, 1]])
    q = quotient_basis([[1, 0, 0]], [])
    with pytest.raises(QuotientError):
        q.coordinates([0, 1, 0])
    with pytest.raises(QuotientError):
        q.coordinates([1, 0])


@settings(max_examples=200, deadline=None)
@given(int_matrices())
def test_rank_matches_sympy(M):
    expected = sympy.Matrix(M).rank()
    assert rank_q(M) == expected
    sparse = [{j: v for j, v in enumerate(row) if v} for row in M]
    assert sparse_rank(sparse) == expected


@settings(max_examples=100, deadline=None)
@given(int_matrices())
def test_nullspace(M):
    n = len(M[0])
    basis = nullspace(M, n)
    assert len(basis) == n - sympy.Matrix(M).rank()
    for v in basis:
        assert all(sum(F(a) * x for a, x in zip(row, v)) == 0 for row in M)


@settings(max_examples=100, deadline=None)
@given(int_matrices(max_rows=4, max_cols=4), st.lists(small_ints, min_size=4, max_size=4))
def test_quotient_coordinates_reconstruct(Z, weights):
    n = len(Z[0])
    B = [Z[0]]
    q = quotient_basis(Z, B, n)
    assert len(q) == sympy.Matrix(Z).rank() - sympy.Matrix(B).rank()
    v = [sum(F(w) * z[j] for w, z in zip(weights, Z)) for j in range(n)]
    coords = q.coordinates(v)
    # v - Σ c_i r_i must lie in span(B)
    rest = [v[j] - sum(c * r[j] for c, r in zip(coords, q.representatives)) for j in range(n)]
    assert sympy.Matrix(B + [rest]).rank() == sympy.Matrix(B).rank()
