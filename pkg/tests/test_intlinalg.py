from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from gkzjump import intlinalg as la

small_matrix = st.integers(1, 4).flatmap(
    lambda m: st.integers(1, 4).flatmap(
        lambda n: st.lists(st.lists(st.integers(-6, 6), min_size=n, max_size=n), min_size=m, max_size=m)))


def is_unimodular(U):
    return abs(la.determinant(U)) == 1


def test_xgcd_bezout():
    for a, b in [(12, 18), (-4, 6), (0, 5), (7, 0), (-3, -9)]:
        g, x, y = la.xgcd(a, b)
        assert g >= 0 and x * a + y * b == g
        assert g == abs(__import__("math").gcd(a, b))


def test_hermite_known():
    H, U = la.hermite_normal_form([[2, 4], [1, 3]])
    assert H == [[1, 1], [0, 2]]
    assert la.matmul(U, [[2, 4], [1, 3]]) == H


def test_smith_known():
    assert la.smith_normal_form([[2, 0], [0, 3]])[0] == [[1, 0], [0, 6]]
    assert la.smith_normal_form([[1, 1], [1, 1]])[0] == [[1, 0], [0, 0]]


def test_smith_divisible_pivot_terminates():
    # the pivot divides the off-diagonal entry; used to cycle forever
    S, U, V = la.smith_normal_form([[1, 1], [0, 1], [0, 0]])
    assert S == [[1, 0], [0, 1], [0, 0]]


@settings(max_examples=150, deadline=None)
@given(small_matrix)
def test_hermite_properties(M):
    H, U = la.hermite_normal_form(M)
    assert la.matmul(U, M) == H
    assert is_unimodular(U)
    last = -1
    for row in H:
        nz = [j for j, x in enumerate(row) if x]
        if not nz:
            continue
        assert nz[0] > last and row[nz[0]] > 0
        last = nz[0]


@settings(max_examples=150, deadline=None)
@given(small_matrix)
def test_smith_properties(M):
    S, U, V = la.smith_normal_form(M)
    assert la.matmul(la.matmul(U, M), V) == S
    assert is_unimodular(U) and is_unimodular(V)
    diag = [S[i][i] for i in range(min(len(S), len(S[0])))]
    assert all(S[i][j] == 0 for i in range(len(S)) for j in range(len(S[0])) if i != j)
    nz = [x for x in diag if x]
    assert all(x > 0 for x in nz)
    assert all(b % a == 0 for a, b in zip(nz, nz[1:]))
    assert len(nz) == la.rank(M)


def test_kernel_0134():
    K = la.lattice_kernel([[1, 1, 1, 1], [0, 1, 3, 4]])
    assert K.rank == 2 and K.saturated
    for v in K.vectors:
        assert la.matvec([[1, 1, 1, 1], [0, 1, 3, 4]], v) == [0, 0]
    # saturation: the kernel basis spans a primitive sublattice
    assert la.elementary_divisors([list(v) for v in K.vectors]) == [1, 1]


@settings(max_examples=100, deadline=None)
@given(small_matrix)
def test_kernel_is_saturated_and_complete(M):
    n = len(M[0])
    K = la.lattice_kernel(M)
    assert K.rank == n - la.rank(M)
    for v in K.vectors:
        assert not any(la.matvec(M, v))
    if K.vectors:
        assert set(la.elementary_divisors([list(v) for v in K.vectors])) <= {1}


def test_determinant_matches_rational_elimination():
    M = [[2, -1, 3], [0, 4, 1], [5, 2, -2]]
    R, piv = la.row_echelon(M)
    assert len(piv) == 3
    assert la.determinant(M) == -85  # cofactor expansion along the first row
    assert la.determinant([[1, 2], [2, 4]]) == 0


def test_rational_kernel_and_primitive():
    K = la.rational_kernel([[1, 2, 3]], 3)
    assert len(K) == 2
    for v in K:
        assert v[0] + 2 * v[1] + 3 * v[2] == 0
    assert la.primitive([Fraction(1, 2), Fraction(-3, 4)]) == [2, -3]


def test_solve_integer():
    B = [[2, 0], [0, 3]]
    assert la.matvec(B, la.solve_integer(B, [4, 9])) == [4, 9]
    assert la.solve_integer(B, [1, 0]) is None
    assert la.solve_integer([[1, 1], [1, 1]], [1, 2]) is None
