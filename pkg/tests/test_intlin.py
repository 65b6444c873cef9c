from hypothesis import given, settings
from hypothesis import strategies as st
import pytest

from tilecoh import intlin as il


@st.composite
def matrices(draw, max_dim=4, bound=8):
    m = draw(st.integers(1, max_dim))
    n = draw(st.integers(1, max_dim))
    rows = draw(st.lists(st.lists(st.integers(-bound, bound), min_size=n, max_size=n),
                         min_size=m, max_size=m))
    return rows, n


@settings(max_examples=500, deadline=None)
@given(matrices())
def test_smith_matches_determinant_divisors(An):
    A, n = An
    s = il.smith(A, n)
    assert abs(il.det(s.U)) == 1 and abs(il.det(s.V)) == 1
    assert il.matmul(il.matmul(s.U, A, cols=n), s.V, cols=n) == s.D
    d = s.diagonal
    assert all(x >= 0 for x in d)
    nz = [x for x in d if x]
    assert all(b % a == 0 for a, b in zip(nz, nz[1:]))
    assert s.invariant_factors == il.invariant_factors_by_minors(A, n)


def test_smith_small_examples():
    assert il.smith([[2, 0], [0, 3]]).invariant_factors == [1, 6]
    assert il.smith([[2, 4], [6, 8]]).invariant_factors == [2, 4]
    assert il.invariant_factors_by_minors([[2, 0], [0, 3]]) == [1, 6]


@settings(max_examples=100, deadline=None)
@given(matrices())
def test_kernel_is_saturated(An):
    A, n = An
    K = il.kernel_basis(A, n)
    vecs = il.columns(K) if K and K[0] else []
    for v in vecs:
        assert not any(il.matvec(A, v))
    assert len(vecs) == n - il.rank(A)


@settings(max_examples=100, deadline=None)
@given(matrices(), st.lists(st.integers(-5, 5), min_size=4, max_size=4))
def test_solve_in_lattice(An, x):
    A, n = An
    x = x[:n]
    b = il.matvec(A, x)
    y = il.solve_in_lattice(A, b, n)
    assert y is not None and il.matvec(A, y) == b


def test_solve_without_integer_solution():
    assert il.solve_in_lattice([[2]], [1]) is None


def test_charpoly_and_roots():
    A = [[25, 0, 0], [0, 3, 1], [0, 0, 3]]
    # (x - 25)(x - 3)^2, leading coefficient first
    assert il.charpoly(A) == [1, -31, 159, -225]
    assert il.integer_roots(il.charpoly(A)) == [(25, 1), (3, 2)]


def test_eigen_integer():
    pairs = il.eigen_integer([[25, -2], [0, 3]])
    assert (25, [1, 0]) in pairs and (3, [1, 11]) in pairs


def test_hermite_is_unimodular_transform():
    A = [[4, 6], [2, 8], [6, 2]]
    H, U = il.hermite(A, 2)
    assert abs(il.det(U)) == 1 and il.matmul(U, A, cols=2) == H


def test_csv_roundtrip():
    A = [[1, -2, 3], [0, 15300, -7]]
    assert il.from_csv(il.to_csv(A)) == A
    assert il.from_json(il.to_json(A)) == A


def test_inverse_unimodular():
    P = [[1, 2, 0], [0, 1, 0], [3, 7, 1]]
    assert il.matmul(P, il.inverse_unimodular(P)) == il.identity(3)
    with pytest.raises(ValueError):
        il.inverse_unimodular([[2, 0], [0, 1]])
