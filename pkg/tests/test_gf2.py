import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import kernel_vectors, row_space_vectors
from retorix.complex import ComplexError, crosspolytope, polygon, simplex_boundary
from retorix.gf2 import (
    CapacityError,
    Gf2Matrix,
    bitstring,
    bits_to_int,
    format_matrix,
    in_row_space,
    int_to_bits,
    is_characteristic,
    kernel,
    parse_bitstring,
    parse_matrix,
    rref,
    row_space,
    span,
)


def vecs(*strings):
    return {parse_bitstring(s) for s in strings}


@st.composite
def matrices(draw, max_rows=4, max_cols=6):
    q = draw(st.integers(0, max_rows))
    m = draw(st.integers(1, max_cols))
    rows = draw(st.lists(st.lists(st.integers(0, 1), min_size=m, max_size=m), min_size=q, max_size=q))
    return Gf2Matrix.from_lists(rows) if rows else Gf2Matrix((), m)


def test_bitstrings():
    assert bitstring(0b0101, 4) == "1010"
    assert parse_bitstring("1010") == 0b0101
    assert int_to_bits(bits_to_int([1, 0, 1]), 3) == [1, 0, 1]


def test_rref_examples():
    r = rref(Gf2Matrix.from_lists([[1, 0, 1], [0, 1, 1]]))
    assert r.rank == 2 and set(r.kernel) == vecs("111")
    z = rref(Gf2Matrix.from_lists([[0, 0, 0], [0, 0, 0]]))
    assert z.rank == 0 and set(z.kernel) == vecs("100", "010", "001")
    d = rref(Gf2Matrix.from_lists([[1, 1, 0], [1, 1, 0]]))
    assert d.rank == 1 and set(span(d.kernel)) == set(span([parse_bitstring("110"), parse_bitstring("001")]))


def test_row_space_examples():
    assert set(row_space(Gf2Matrix.from_lists([[1, 0, 1, 0], [0, 1, 0, 1]]))) == vecs("0000", "1010", "0101", "1111")
    assert row_space(Gf2Matrix((), 3)) == [0]
    assert set(row_space(Gf2Matrix.from_lists([[1, 0, 1, 1], [0, 1, 0, 1]]))) == vecs("0000", "1011", "0101", "1110")


def test_is_characteristic_examples():
    D = simplex_boundary(2)
    assert is_characteristic(D, Gf2Matrix.from_lists([[1, 0, 1], [0, 1, 1]])) == (True, None)
    assert is_characteristic(D, Gf2Matrix.from_lists([[1, 0, 1], [0, 1, 0]])) == (False, (1, 3))
    assert is_characteristic(crosspolytope(2), Gf2Matrix.from_lists([[1, 0, 1, 0], [0, 1, 1, 1]]))[0]
    with pytest.raises(ComplexError):
        is_characteristic(polygon(4), Gf2Matrix.from_lists([[1, 0, 1]]))


def test_parse_and_format():
    M = parse_matrix("1010\n0 1 1 1\n")
    assert M.to_lists() == [[1, 0, 1, 0], [0, 1, 1, 1]]
    assert parse_matrix("[[1,0],[0,1]]").to_lists() == [[1, 0], [0, 1]]
    assert parse_matrix(format_matrix(M)) == M
    with pytest.raises(ValueError):
        parse_matrix("102\n")


def test_capacity_guard():
    with pytest.raises(CapacityError):
        span([1 << i for i in range(30)])


@settings(max_examples=200, deadline=None)
@given(matrices())
def test_row_space_orthogonal_to_kernel(L):
    """ω ∈ row Λ iff |ω ∩ g| is even for every g ∈ ker Λ, by full enumeration."""
    m = L.ncols
    rows = L.to_lists()
    ker = kernel_vectors(rows, m)
    assert {bits_to_int(g) for g in ker} == set(span(kernel(L)))
    assert {bits_to_int(v) for v in row_space_vectors(rows, m)} == set(row_space(L))
    for w in range(1 << m):
        orth = all(sum(g[i] for i in range(m) if w >> i & 1) % 2 == 0 for g in ker)
        assert in_row_space(L, w) == orth == (w in set(row_space(L)))


@settings(max_examples=100, deadline=None)
@given(matrices())
def test_rank_nullity(L):
    r = rref(L)
    assert r.rank + len(r.kernel) == L.ncols
    assert all(L.apply(v) == 0 for v in r.kernel)
    assert L.transpose().rank == r.rank


def test_transpose_and_columns():
    M = Gf2Matrix.from_lists([[1, 1, 0], [0, 1, 1]])
    assert M.transpose().to_lists() == [[1, 0], [1, 1], [0, 1]]
    assert Gf2Matrix.from_columns(M.columns(), 2) == M
    assert M.column(1) == 0b11
    for a, b in itertools.product(range(8), repeat=2):
        assert M.apply(a ^ b) == M.apply(a) ^ M.apply(b)
