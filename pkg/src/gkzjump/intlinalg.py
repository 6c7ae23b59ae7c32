"""Exact integer and rational linear algebra.

Matrices are plain lists of rows holding Python ints (or Fractions where
noted).  Hermite forms are row-style: ``U @ M == H`` with ``H`` in row
echelon form, positive pivots and entries above each pivot reduced into
``[0, pivot)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import List, Sequence, Tuple

IntMatrix = List[List[int]]


def identity(n: int) -> IntMatrix:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def zeros(rows: int, cols: int) -> IntMatrix:
    return [[0] * cols for _ in range(rows)]


def transpose(M: Sequence[Sequence], cols: int | None = None) -> list:
    if not M:
        return [[] for _ in range(cols or 0)]
    return [list(r) for r in zip(*M)]


def matmul(A: Sequence[Sequence], B: Sequence[Sequence]) -> list:
    Bt = list(zip(*B)) if B else []
    inner = len(B)
    if inner == 0:
        return [[0] * 0 for _ in A]
    return [[sum(a * b for a, b in zip(row, col)) for col in Bt] for row in A]


def matvec(A: Sequence[Sequence], v: Sequence) -> list:
    return [sum(a * x for a, x in zip(row, v)) for row in A]


def xgcd(a: int, b: int) -> Tuple[int, int, int]:
    """Return ``(g, x, y)`` with ``x*a + y*b == g == gcd(a, b) >= 0``."""
    x0, x1, y0, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        return -a, -x0, -y0
    return a, x0, y0


def hermite_normal_form(M: Sequence[Sequence[int]]) -> Tuple[IntMatrix, IntMatrix]:
    """Row-style Hermite normal form.

    Returns ``(H, U)`` with ``U`` unimodular and ``U @ M == H``.  Rows of the
    working matrix are combined by 2x2 unimodular gcd steps and every pivot
    column is reduced right after the pivot is fixed, which keeps entries
    small for the tiny matrices used here.
    """
    H = [list(map(int, r)) for r in M]
    m = len(H)
    n = len(H[0]) if m else 0
    U = identity(m)
    row = 0
    for col in range(n):
        if row >= m:
            break
        for i in range(row + 1, m):
            b = H[i][col]
            if b == 0:
                continue
            a = H[row][col]
            g, x, y = xgcd(a, b)
            p, q = a // g, b // g
            H[row], H[i] = ([x * s + y * t for s, t in zip(H[row], H[i])],
                            [-q * s + p * t for s, t in zip(H[row], H[i])])
            U[row], U[i] = ([x * s + y * t for s, t in zip(U[row], U[i])],
                            [-q * s + p * t for s, t in zip(U[row], U[i])])
        piv = H[row][col]
        if piv == 0:
            continue
        if piv < 0:
            H[row] = [-v for v in H[row]]
            U[row] = [-v for v in U[row]]
            piv = -piv
        for i in range(row):
            f = H[i][col] // piv
            if f:
                H[i] = [s - f * t for s, t in zip(H[i], H[row])]
                U[i] = [s - f * t for s, t in zip(U[i], U[row])]
        row += 1
    return H, U


def _swap_rows(M, i, j):
    M[i], M[j] = M[j], M[i]


def _swap_cols(M, i, j):
    for r in M:
        r[i], r[j] = r[j], r[i]


def smith_normal_form(M: Sequence[Sequence[int]]) -> Tuple[IntMatrix, IntMatrix, IntMatrix]:
    """Return ``(S, U, V)`` with ``U @ M @ V == S`` diagonal, d_1 | d_2 | ...

    Diagonal entries are nonnegative; ``U`` and ``V`` are unimodular.
    """
    S = [list(map(int, r)) for r in M]
    m = len(S)
    n = len(S[0]) if m else 0
    U = identity(m)
    V = identity(n)
    t = 0
    while t < min(m, n):
        nz = [(abs(S[i][j]), i, j) for i in range(t, m) for j in range(t, n) if S[i][j]]
        if not nz:
            break
        _, i, j = min(nz)
        _swap_rows(S, t, i)
        _swap_rows(U, t, i)
        _swap_cols(S, t, j)
        _swap_cols(V, t, j)
        while True:
            done = True
            # clear column t below the pivot
            for i in range(t + 1, m):
                b = S[i][t]
                if b == 0:
                    continue
                a = S[t][t]
                g, x, y = xgcd(a, b)
                if g == abs(a):
                    x, y = (1 if a > 0 else -1), 0
                p, q = a // g, b // g
                S[t], S[i] = ([x * s + y * u for s, u in zip(S[t], S[i])],
                              [-q * s + p * u for s, u in zip(S[t], S[i])])
                U[t], U[i] = ([x * s + y * u for s, u in zip(U[t], U[i])],
                              [-q * s + p * u for s, u in zip(U[t], U[i])])
            # clear row t right of the pivot
            for j in range(t + 1, n):
                b = S[t][j]
                if b == 0:
                    continue
                a = S[t][t]
                g, x, y = xgcd(a, b)
                if g == abs(a):
                    x, y = (1 if a > 0 else -1), 0
                p, q = a // g, b // g
                for R in (S, V):
                    for r in R:
                        r[t], r[j] = x * r[t] + y * r[j], -q * r[t] + p * r[j]
                done = False
            if any(S[i][t] for i in range(t + 1, m)):
                continue
            if not done:
                continue
            # divisibility: pivot must divide the remaining block
            piv = S[t][t]
            bad = next(((i, j) for i in range(t + 1, m) for j in range(t + 1, n)
                        if S[i][j] % piv), None)
            if bad is None:
                break
            i, _ = bad
            S[t] = [s + u for s, u in zip(S[t], S[i])]
            U[t] = [s + u for s, u in zip(U[t], U[i])]
        if S[t][t] < 0:
            S[t] = [-v for v in S[t]]
            U[t] = [-v for v in U[t]]
        t += 1
    return S, U, V


def elementary_divisors(M: Sequence[Sequence[int]]) -> List[int]:
    S, _, _ = smith_normal_form(M)
    return [S[i][i] for i in range(min(len(S), len(S[0]) if S else 0)) if S[i][i]]


def rank(M: Sequence[Sequence]) -> int:
    """Rank over the rationals (entries int or Fraction)."""
    return len(row_echelon(M)[1])


def row_echelon(M: Sequence[Sequence]) -> Tuple[List[List[Fraction]], List[int]]:
    """Reduced row echelon form over Q; returns (nonzero rows, pivot columns)."""
    R = [[Fraction(x) for x in r] for r in M]
    m = len(R)
    n = len(R[0]) if m else 0
    pivots = []
    row = 0
    for col in range(n):
        p = next((i for i in range(row, m) if R[i][col] != 0), None)
        if p is None:
            continue
        R[row], R[p] = R[p], R[row]
        inv = 1 / R[row][col]
        R[row] = [x * inv for x in R[row]]
        for i in range(m):
            if i != row and R[i][col] != 0:
                f = R[i][col]
                R[i] = [a - f * b for a, b in zip(R[i], R[row])]
        pivots.append(col)
        row += 1
        if row == m:
            break
    return R[:row], pivots


def determinant(M: Sequence[Sequence[int]]) -> int:
    """Bareiss fraction-free determinant of a square integer matrix."""
    A = [list(map(int, r)) for r in M]
    n = len(A)
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        if A[k][k] == 0:
            p = next((i for i in range(k + 1, n) if A[i][k]), None)
            if p is None:
                return 0
            A[k], A[p] = A[p], A[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                A[i][j] = (A[i][j] * A[k][k] - A[i][k] * A[k][j]) // prev
        prev = A[k][k]
    return sign * A[n - 1][n - 1]


def rational_kernel(M: Sequence[Sequence], ncols: int) -> List[List[Fraction]]:
    """Basis of {x in Q^ncols : M x = 0}."""
    if not M:
        return [[Fraction(int(i == j)) for j in range(ncols)] for i in range(ncols)]
    R, piv = row_echelon(M)
    free = [c for c in range(ncols) if c not in piv]
    basis = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for r, p in zip(R, piv):
            v[p] = -r[f]
        basis.append(v)
    return basis


def primitive(v: Sequence) -> List[int]:
    """Scale a rational vector to the primitive integer vector on its ray."""
    from math import gcd, lcm
    fr = [Fraction(x) for x in v]
    den = 1
    for x in fr:
        den = lcm(den, x.denominator)
    ints = [int(x * den) for x in fr]
    g = 0
    for x in ints:
        g = gcd(g, x)
    return [x // g for x in ints] if g else ints


@dataclass(frozen=True)
class LatticeBasis:
    ambient_dim: int
    vectors: Tuple[Tuple[int, ...], ...]
    saturated: bool = True

    @property
    def rank(self) -> int:
        return len(self.vectors)


def lattice_kernel(A: Sequence[Sequence[int]]) -> LatticeBasis:
    """Basis of the saturated lattice {u in Z^n : A u = 0}.

    Uses the row-style HNF of A^T: rows of the transform U that hit zero rows
    of the Hermite form span the kernel, and unimodularity of U makes the
    basis saturated.
    """
    n = len(A[0]) if A else 0
    if not A:
        return LatticeBasis(n, tuple(tuple(r) for r in identity(n)))
    H, U = hermite_normal_form(transpose(A))
    vecs = tuple(tuple(U[i]) for i in range(n) if not any(H[i]))
    return LatticeBasis(n, vecs)


def solve_integer(B: Sequence[Sequence[int]], v: Sequence[int]):
    """Return integer w with B w == v, or None.  B is d x k."""
    d = len(v)
    k = len(B[0]) if B and B[0] else 0
    if k == 0:
        return [] if not any(v) else None
    S, U, V = smith_normal_form(B)
    Uv = matvec(U, v)
    y = [0] * k
    for i in range(d):
        s = S[i][i] if i < k else 0
        if s == 0:
            if Uv[i]:
                return None
        else:
            if Uv[i] % s:
                return None
            y[i] = Uv[i] // s
    return matvec(V, y)
