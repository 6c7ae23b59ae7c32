"""Polyhedral geometry of the cone over the columns of a pointed matrix.

Faces are stored as sorted tuples of column indices together with an
integer functional that vanishes on the face and is positive on every
other column.  The empty face carries the pointedness certificate.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Dict, List, Optional, Sequence, Tuple

from . import intlinalg as la


class NotFullRank(ValueError):
    pass


class NotPointed(ValueError):
    def __init__(self, message: str, witness: Optional[Tuple[int, ...]] = None):
        super().__init__(message)
        self.witness = witness


@dataclass(frozen=True)
class Face:
    columns: Tuple[int, ...]
    functional: Tuple[int, ...]
    dim: int

    def __contains__(self, j: int) -> bool:
        return j in self.columns

    def label(self) -> str:
        return "{" + ",".join(str(j + 1) for j in self.columns) + "}"


@dataclass(frozen=True)
class PointedMatrix:
    matrix: Tuple[Tuple[int, ...], ...]
    certificate: Tuple[Fraction, ...]

    @property
    def d(self) -> int:
        return len(self.matrix)

    @property
    def n(self) -> int:
        return len(self.matrix[0])

    def column(self, j: int) -> Tuple[int, ...]:
        return tuple(r[j] for r in self.matrix)

    @property
    def columns(self) -> List[Tuple[int, ...]]:
        return [self.column(j) for j in range(self.n)]

    def apply(self, u: Sequence[int]) -> Tuple[int, ...]:
        return tuple(sum(a * x for a, x in zip(row, u)) for row in self.matrix)

    def check_certificate(self) -> bool:
        return all(sum(h * a for h, a in zip(self.certificate, col)) > 0
                   for col in self.columns)

    def to_rows(self) -> List[List[int]]:
        return [list(r) for r in self.matrix]


@dataclass
class FaceLattice:
    faces: List[Face]
    containment: List[Tuple[int, int]] = field(default_factory=list)

    def by_columns(self, cols: Sequence[int]) -> Face:
        key = tuple(sorted(cols))
        for f in self.faces:
            if f.columns == key:
                return f
        raise KeyError(key)

    @property
    def empty(self) -> Face:
        return self.faces[0]

    @property
    def full(self) -> Face:
        return self.faces[-1]


def _dot(u, v):
    return sum(a * b for a, b in zip(u, v))


def _facet_normals(cols: List[Tuple[int, ...]], d: int) -> List[Tuple[Tuple[int, ...], Tuple[int, ...]]]:
    """Facets as (normal, column set); candidates come from (d-1)-subsets of columns."""
    seen = {}
    n = len(cols)
    for sub in itertools.combinations(range(n), d - 1):
        rows = [list(cols[j]) for j in sub]
        if rows and la.rank(rows) != d - 1:
            continue
        ker = la.lattice_kernel(rows) if rows else la.LatticeBasis(d, tuple(tuple(r) for r in la.identity(d)))
        if ker.rank != 1:
            continue
        phi = ker.vectors[0]
        vals = [_dot(phi, c) for c in cols]
        if all(v >= 0 for v in vals):
            pass
        elif all(v <= 0 for v in vals):
            phi = tuple(-x for x in phi)
            vals = [-v for v in vals]
        else:
            continue
        on = tuple(j for j in range(n) if vals[j] == 0)
        if len(on) == n:
            continue
        seen.setdefault(on, phi)
    return [(phi, on) for on, phi in sorted(seen.items())]


def _find_kernel_witness(A: Sequence[Sequence[int]], support: Sequence[int], bound: int = 6):
    n = len(A[0])
    for j in support:
        if not any(r[j] for r in A):
            return tuple(int(i == j) for i in range(n))
    support = list(support)[:6]
    for total in range(1, bound * len(support) + 1):
        for combo in itertools.product(range(bound + 1), repeat=len(support)):
            if sum(combo) != total:
                continue
            u = [0] * n
            for j, c in zip(support, combo):
                u[j] = c
            if not any(la.matvec(A, u)):
                return tuple(u)
    return None


def make_pointed_matrix(M: Sequence[Sequence[int]]) -> PointedMatrix:
    """Validate rank and pointedness; attach a positive functional.

    The certificate is the sum of the primitive inner facet normals, which is
    strictly positive on every column exactly when the columns lie in an
    open half-space.
    """
    rows = [list(map(int, r)) for r in M]
    if not rows or not rows[0]:
        raise NotFullRank("empty matrix")
    d, n = len(rows), len(rows[0])
    if any(len(r) != n for r in rows):
        raise ValueError("ragged matrix")
    if la.rank(rows) < d:
        raise NotFullRank(f"rank {la.rank(rows)} < {d}")
    cols = [tuple(r[j] for r in rows) for j in range(n)]
    facets = _facet_normals(cols, d)
    h = [0] * d
    for phi, _ in facets:
        h = [a + b for a, b in zip(h, phi)]
    bad = [j for j in range(n) if _dot(h, cols[j]) <= 0] if facets else list(range(n))
    if bad:
        raise NotPointed("columns do not lie in an open half-space",
                         _find_kernel_witness(rows, bad))
    g = math.gcd(*h)
    h = [x // g for x in h]
    return PointedMatrix(tuple(map(tuple, rows)), tuple(Fraction(x) for x in h))


@lru_cache(maxsize=None)
def _int_certificate(A: PointedMatrix) -> Tuple[int, ...]:
    den = math.lcm(*(Fraction(x).denominator for x in A.certificate))
    return tuple(int(x * den) for x in A.certificate)


def face_lattice(A: PointedMatrix) -> FaceLattice:
    """All faces of the cone over the columns, each with a witness functional."""
    cols = A.columns
    n, d = A.n, A.d
    facets = _facet_normals(cols, d)
    full = tuple(range(n))
    sets = {full}
    for _, on in facets:
        sets |= {tuple(sorted(set(s) & set(on))) for s in sets}
    faces = []
    h = _int_certificate(A)
    for s in sets:
        if not s:
            phi = h
        else:
            phi = [0] * d
            for normal, on in facets:
                if set(s) <= set(on):
                    phi = [a + b for a, b in zip(phi, normal)]
        dim = la.rank([cols[j] for j in s]) if s else 0
        faces.append(Face(s, tuple(phi), dim))
    faces.sort(key=lambda f: (f.dim, len(f.columns), f.columns))
    contain = [(i, k) for i, f in enumerate(faces) for k, g in enumerate(faces)
               if i != k and set(f.columns) <= set(g.columns)]
    return FaceLattice(faces, contain)


def verify_face(A: PointedMatrix, F: Face) -> bool:
    vals = [_dot(F.functional, c) for c in A.columns]
    return all((v == 0) == (j in F.columns) for j, v in enumerate(vals)) and \
        all(v > 0 for j, v in enumerate(vals) if j not in F.columns)


def _placing_volume(points: List[Tuple[int, ...]], d: int) -> int:
    """d! times the volume of conv(points) via a placing triangulation."""
    pts = list(dict.fromkeys(points))
    base = [0]
    for i in range(1, len(pts)):
        cand = base + [i]
        if la.rank([[a - b for a, b in zip(pts[j], pts[base[0]])] for j in cand[1:]]) == len(cand) - 1:
            base = cand
        if len(base) == d + 1:
            break
    if len(base) < d + 1:
        return 0

    def orient(simplex_pts):
        p0 = simplex_pts[0]
        return la.determinant([[a - b for a, b in zip(p, p0)] for p in simplex_pts[1:]])

    simplices = [tuple(base)]
    total = abs(orient([pts[i] for i in base]))
    # boundary facet -> opposite vertex
    boundary = {}
    for k in range(d + 1):
        facet = tuple(v for i, v in enumerate(base) if i != k)
        boundary[facet] = base[k]
    for p in range(len(pts)):
        if p in base:
            continue
        visible = []
        for facet, opp in boundary.items():
            fp = [pts[i] for i in facet]
            s_opp = orient(fp + [pts[opp]])
            s_p = orient(fp + [pts[p]])
            if s_p * s_opp < 0:
                visible.append(facet)
        for facet in visible:
            del boundary[facet]
        for facet in visible:
            simplex = facet + (p,)
            simplices.append(simplex)
            total += abs(orient([pts[i] for i in simplex]))
            for k in range(d):
                sub = tuple(sorted(v for i, v in enumerate(facet) if i != k) + [p])
                key = tuple(sorted(sub))
                # a new facet shared by two new simplices is interior
                if key in boundary:
                    del boundary[key]
                else:
                    boundary[key] = facet[k]
    return total


def normalized_volume(A: PointedMatrix, order: str = "lex") -> int:
    """d! * vol(conv(0, a_1, ..., a_n)) by exact triangulation.

    ``order`` chooses the placing order of the columns ("lex" or "reverse");
    the result does not depend on it.
    """
    cols = A.columns
    if order == "reverse":
        cols = cols[::-1]
    elif order != "lex":
        raise ValueError(order)
    return _placing_volume([tuple([0] * A.d)] + cols, A.d)


def semigroup_member(A: PointedMatrix, v: Sequence[int]):
    """Return (True, u) with A u = v and u in N^n, or (False, None)."""
    v = tuple(int(x) for x in v)
    u = next(_FiberSolver.get(A.matrix, _int_certificate(A)).solutions(v), None)
    return (True, u) if u is not None else (False, None)


def semigroup_fiber(A: PointedMatrix, v: Sequence[int]) -> List[Tuple[int, ...]]:
    """All u in N^n with A u = v, in lexicographically decreasing order."""
    return list(_fiber(A.matrix, _int_certificate(A), tuple(int(x) for x in v)))


@lru_cache(maxsize=200000)
def _fiber(matrix, h, v):
    sols = _FiberSolver.get(matrix, h).solutions(v)
    return tuple(sorted(sols, reverse=True))


class _FiberSolver:
    """Solutions of A u = v over N^n.

    The columns split into d independent basis columns and the rest.  The
    multiplicities of the non-basis columns are enumerated (bounded by the
    positive functional h); the basis part is then solved exactly with the
    integer adjugate.
    """

    _cache: Dict[Tuple, "_FiberSolver"] = {}

    @classmethod
    def get(cls, matrix, h) -> "_FiberSolver":
        key = (matrix, h)
        s = cls._cache.get(key)
        if s is None:
            s = cls._cache[key] = cls(matrix, h)
        return s

    def __init__(self, matrix, h):
        d, n = len(matrix), len(matrix[0])
        self.n = n
        self.h = h
        self.cols = [tuple(r[j] for r in matrix) for j in range(n)]
        basis: List[int] = []
        for j in range(n - 1, -1, -1):
            if la.rank([self.cols[k] for k in basis] + [self.cols[j]]) > len(basis):
                basis.append(j)
            if len(basis) == d:
                break
        self.basis = sorted(basis)
        self.free = [j for j in range(n) if j not in basis]
        B = [[self.cols[j][i] for j in self.basis] for i in range(d)]
        self.det = la.determinant(B)
        inv, _ = la.row_echelon([list(r) + [int(i == k) for k in range(d)] for i, r in enumerate(B)])
        adj = [[int(x * self.det) for x in row[d:]] for row in inv]
        if self.det < 0:
            adj = [[-x for x in row] for row in adj]
            self.det = -self.det
        self.adj = adj
        self.weights = [_dot(h, c) for c in self.cols]
        # basis coordinates contributed by one copy of each free column
        self.shift = {j: [_dot(row, self.cols[j]) for row in adj] for j in self.free}

    def _solve_basis(self, r):
        x = []
        for row in self.adj:
            num = _dot(row, r)
            q, rem = divmod(num, self.det)
            if rem or q < 0:
                return None
            x.append(q)
        return x

    def solutions(self, v):
        free, cols, h, w = self.free, self.cols, self.h, self.weights
        m = len(free)
        u = [0] * self.n

        def rec(i, r):
            if _dot(h, r) < 0:
                return
            if i == m:
                x = self._solve_basis(r)
                if x is not None:
                    for j, val in zip(self.basis, x):
                        u[j] = val
                    yield tuple(u)
                return
            j = free[i]
            c = cols[j]
            top = _dot(h, r) // w[j]
            if i == m - 1:
                # basis part is adj.(r - k c) / det; restrict k to where it is >= 0
                lo = 0
                for a, b in zip((_dot(row, r) for row in self.adj), self.shift[j]):
                    if b > 0:
                        top = min(top, a // b)
                    elif b < 0:
                        lo = max(lo, -(a // (-b)))
                    elif a < 0:
                        return
                for k in range(top, lo - 1, -1):
                    u[j] = k
                    x = self._solve_basis(tuple(t - k * y for t, y in zip(r, c)))
                    if x is not None:
                        for jj, val in zip(self.basis, x):
                            u[jj] = val
                        yield tuple(u)
                u[j] = 0
                return
            for k in range(top, -1, -1):
                u[j] = k
                yield from rec(i + 1, tuple(t - k * x for t, x in zip(r, c)))
            u[j] = 0

        return rec(0, tuple(v))


class LocalizedSemigroup:
    """Membership in N A + Z F, via the quotient group Z^d / Z F.

    The quotient map comes from a Smith form of the face's column matrix;
    reachable quotient elements are enumerated level by level in the face's
    functional, which is constant on cosets of Z F.
    """

    def __init__(self, A: PointedMatrix, F: Face):
        self.A = A
        self.F = F
        d = A.d
        cols = A.columns
        if F.columns:
            B = [[cols[j][i] for j in F.columns] for i in range(d)]
            S, U, _ = la.smith_normal_form(B)
            self.moduli = [S[i][i] if i < len(F.columns) else 0 for i in range(d)]
        else:
            U = la.identity(d)
            self.moduli = [0] * d
        self.U = U
        self.phi = F.functional
        self.gens = [(_dot(self.phi, cols[j]), self.project(cols[j]))
                     for j in range(A.n) if j not in F.columns]
        self.levels: Dict[int, set] = {0: {self.project([0] * d)}}
        self.top = 0

    def project(self, v):
        w = la.matvec(self.U, v)
        return tuple(x % m if m else x for x, m in zip(w, self.moduli))

    def _grow(self, level):
        while self.top < level:
            self.top += 1
            cur = set()
            for wt, g in self.gens:
                prev = self.levels.get(self.top - wt)
                if prev:
                    cur |= {tuple((a + b) % m if m else a + b for a, b, m in zip(p, g, self.moduli))
                            for p in prev}
            self.levels[self.top] = cur

    def __contains__(self, v) -> bool:
        lvl = _dot(self.phi, v)
        if lvl < 0:
            return False
        self._grow(lvl)
        return self.project(v) in self.levels[lvl]


_LOCALIZED: Dict[Tuple, LocalizedSemigroup] = {}


def localized_member(A: PointedMatrix, F: Face, v: Sequence[int]) -> bool:
    """True iff v lies in N A + Z F."""
    key = (A.matrix, F.columns)
    loc = _LOCALIZED.get(key)
    if loc is None:
        loc = _LOCALIZED[key] = LocalizedSemigroup(A, F)
    return tuple(v) in loc


def lattice_index(A: PointedMatrix) -> int:
    """[Z^d : Z A], the product of the elementary divisors."""
    return math.prod(la.elementary_divisors(A.to_rows()))
