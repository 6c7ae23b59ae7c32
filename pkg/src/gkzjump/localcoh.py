"""Local cohomology of S_A at the maximal ideal, computed two ways.

* The homological path resolves S_A over R, forms Ext^{n-i}_R(S_A, R) and
  uses graded local duality:
      dim H^i_m(S_A)_alpha = dim Ext^{n-i}_R(S_A, R)_{eps - alpha},
  where eps is the sum of the columns (omega_R = R(eps)).
* The combinatorial path evaluates, degree by degree, the cochain complex
  whose term for a face F is the localization of S_A at the monomials of F.
  In degree alpha that term is one-dimensional exactly when
  -alpha lies in N A + Z F.

The exceptional arrangement is reported in parameter coordinates
beta = -alpha.
"""

from __future__ import annotations

import itertools
import logging
import os
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple

from . import conegeom as cg
from . import gmod as gm
from . import gring as gr
from . import intlinalg as la

log = logging.getLogger(__name__)

Degree = Tuple[int, ...]


class ConventionMismatch(RuntimeError):
    def __init__(self, message: str, mismatches=None):
        super().__init__(message)
        self.mismatches = mismatches or []


class InternalInconsistency(RuntimeError):
    pass


# -- combinatorial path --------------------------------------------------------

@dataclass(frozen=True)
class LocalCohSlice:
    degree: Degree
    dims: Tuple[int, ...]

    def nonzero(self) -> List[int]:
        return [i for i, x in enumerate(self.dims) if x]


class FaceComplex:
    """Signed incidences between faces whose dimensions differ by one."""

    def __init__(self, A: cg.PointedMatrix, lattice: cg.FaceLattice):
        self.A = A
        self.faces = lattice.faces
        self.by_dim: Dict[int, List[cg.Face]] = {}
        for F in self.faces:
            self.by_dim.setdefault(F.dim, []).append(F)
        self.basis = {F.columns: self._basis(F) for F in self.faces}
        self.sign: Dict[Tuple, int] = {}
        for F in self.faces:
            for G in self.by_dim.get(F.dim + 1, []):
                if set(F.columns) <= set(G.columns):
                    self.sign[(F.columns, G.columns)] = self._incidence(F, G)
        self._cache: Dict[FrozenSet, Tuple[int, ...]] = {}

    def _basis(self, F: cg.Face) -> List[Tuple[int, ...]]:
        out: List[Tuple[int, ...]] = []
        for j in F.columns:
            c = self.A.column(j)
            if la.rank(out + [c]) > len(out):
                out.append(c)
        return out

    def _incidence(self, F: cg.Face, G: cg.Face) -> int:
        bF, bG = self.basis[F.columns], self.basis[G.columns]
        span = len(bF)
        extra = next(self.A.column(j) for j in G.columns
                     if la.rank(bF + [self.A.column(j)]) > span)
        vecs = bF + [extra]
        # coordinates of vecs in the basis bG
        coords = []
        for v in vecs:
            aug = [list(r) + [x] for r, x in zip(la.transpose(bG), v)]
            R, piv = la.row_echelon(aug)
            sol = [Fraction(0)] * len(bG)
            for row, p in zip(R, piv):
                sol[p] = row[-1]
            coords.append(sol)
        det = _frac_det(coords)
        if det == 0:
            raise InternalInconsistency("degenerate incidence")
        return 1 if det > 0 else -1

    def differential(self, i: int, active: FrozenSet) -> List[List[int]]:
        """Matrix of the map from dim-i active faces to dim-(i+1) active faces."""
        src = [F for F in self.by_dim.get(i, []) if F.columns in active]
        dst = [G for G in self.by_dim.get(i + 1, []) if G.columns in active]
        return [[self.sign.get((F.columns, G.columns), 0) for F in src] for G in dst]

    def cohomology(self, active: FrozenSet, top: int) -> Tuple[int, ...]:
        hit = self._cache.get(active)
        if hit is not None:
            return hit
        ranks = {}
        for i in range(-1, top + 1):
            D = self.differential(i, active)
            ranks[i] = la.rank(D) if D and D[0] else 0
        for i in range(top - 1):
            D1, D2 = self.differential(i, active), self.differential(i + 1, active)
            if D1 and D2 and D1[0] and D2[0]:
                if any(any(x for x in row) for row in la.matmul(D2, D1)):
                    raise InternalInconsistency("face complex differential does not square to zero")
        dims = []
        for i in range(top + 1):
            size = sum(1 for F in self.by_dim.get(i, []) if F.columns in active)
            dims.append(size - ranks[i] - ranks[i - 1])
        out = tuple(dims)
        self._cache[active] = out
        return out


def _frac_det(M: List[List[Fraction]]) -> Fraction:
    M = [row[:] for row in M]
    n = len(M)
    det = Fraction(1)
    for c in range(n):
        p = next((r for r in range(c, n) if M[r][c] != 0), None)
        if p is None:
            return Fraction(0)
        if p != c:
            M[c], M[p] = M[p], M[c]
            det = -det
        det *= M[c][c]
        for r in range(c + 1, n):
            f = M[r][c] / M[c][c]
            if f:
                M[r] = [a - f * b for a, b in zip(M[r], M[c])]
    return det


_FACE_COMPLEX: Dict[Tuple, FaceComplex] = {}


def face_complex(ctx: gr.RingContext) -> FaceComplex:
    key = ctx.matrix.matrix
    fc = _FACE_COMPLEX.get(key)
    if fc is None:
        fc = _FACE_COMPLEX[key] = FaceComplex(ctx.matrix, gm.toric_data(ctx).lattice)
    return fc


def active_faces(ctx: gr.RingContext, alpha: Sequence[int]) -> FrozenSet:
    A = ctx.matrix
    target = tuple(-x for x in alpha)
    return frozenset(F.columns for F in face_complex(ctx).faces
                     if cg.localized_member(A, F, target))


def ishida_slice(ctx: gr.RingContext, alpha: Sequence[int]) -> LocalCohSlice:
    alpha = tuple(int(x) for x in alpha)
    dims = face_complex(ctx).cohomology(active_faces(ctx, alpha), ctx.d)
    return LocalCohSlice(alpha, dims)


# -- homological path --------------------------------------------------------

class ExtData:
    """Minimal resolution of S_A and its Ext modules, computed once per ring."""

    def __init__(self, ctx: gr.RingContext):
        self.ctx = ctx
        self.toric = gm.toric_data(ctx)
        self.module = self.toric.semigroup_ring()
        self.resolution = gm.minimal_free_resolution(self.module)
        self._ext: Dict[int, gm.GradedPresentation] = {}

    @property
    def projective_dimension(self) -> int:
        return self.resolution.length

    def ext(self, j: int) -> gm.GradedPresentation:
        if j not in self._ext:
            self._ext[j] = gm.ext_module(self.module, j, self.resolution)
        return self._ext[j]

    def dual_degree(self, alpha: Sequence[int]) -> Degree:
        """Degree of Ext(S_A, R) paired with H_m(S_A)_alpha."""
        return tuple(e - a for e, a in zip(self.ctx.epsilon, alpha))

    def local_cohomology_dim(self, i: int, alpha: Sequence[int]) -> int:
        j = self.ctx.n - i
        if j < 0 or j > self.projective_dimension:
            return 0
        E = self.ext(j)
        if not E.relations.target:
            return 0
        return gm.hilbert_function(E, self.dual_degree(alpha))

    def slice(self, alpha: Sequence[int]) -> LocalCohSlice:
        alpha = tuple(int(x) for x in alpha)
        return LocalCohSlice(alpha, tuple(self.local_cohomology_dim(i, alpha) for i in range(self.ctx.d + 1)))


_EXT_CACHE: Dict[Tuple, ExtData] = {}


def ext_data(ctx: gr.RingContext) -> ExtData:
    key = ctx.matrix.matrix
    e = _EXT_CACHE.get(key)
    if e is None:
        e = _EXT_CACHE[key] = ExtData(ctx)
    return e


# -- exceptional arrangement ---------------------------------------------------

@dataclass
class ExceptionalArrangement:
    matrix: cg.PointedMatrix
    strata: List[Tuple[Tuple[Fraction, ...], cg.Face, FrozenSet[int]]] = field(default_factory=list)

    def is_empty(self) -> bool:
        return not self.strata

    def witness(self, beta: Sequence) -> Optional[Tuple]:
        for s, F, idx in self.strata:
            if gm.in_span([Fraction(b) - x for b, x in zip(beta, s)], F, self.matrix):
                return (s, F, idx)
        return None

    def to_json(self) -> List[dict]:
        return [{"shift": [_fmt(x) for x in s], "face": list(F.columns),
                 "face_dim": F.dim, "indices": sorted(idx)} for s, F, idx in self.strata]


def _fmt(x: Fraction):
    x = Fraction(x)
    return x.numerator if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def _merge_strata(A: cg.PointedMatrix, raw: Iterable[Tuple[Sequence, cg.Face, int]]):
    """Canonical form; indices of absorbed strata move to the absorbing one."""
    table: Dict[Tuple, List] = {}
    for shift, F, i in raw:
        s = gm._canonical_shift(shift, F, A)
        entry = table.setdefault((s, F.columns), [s, F, set()])
        entry[2].add(i)
    items = list(table.values())
    items.sort(key=lambda e: (-e[1].dim, e[1].columns, e[0]))
    kept: List[List] = []
    for s, F, idx in items:
        host = None
        for k in kept:
            t, G, _ = k
            if set(F.columns) < set(G.columns) and \
                    gm.in_span([a - b for a, b in zip(s, t)], G, A):
                host = k
                break
        if host is not None:
            host[2] |= idx
        else:
            kept.append([s, F, set(idx)])
    kept.sort(key=lambda e: (e[1].dim, e[1].columns, e[0]))
    return [(s, F, frozenset(idx)) for s, F, idx in kept]


def exceptional_arrangement(ctx: gr.RingContext, order: str = "forward") -> ExceptionalArrangement:
    """Zariski closure of the degrees -alpha with H^i_m(S_A)_alpha != 0, i < d."""
    data = ext_data(ctx)
    A = ctx.matrix
    eps = ctx.epsilon
    raw = []
    for i in range(ctx.d):
        j = ctx.n - i
        if j > data.projective_dimension:
            continue
        E = data.ext(j)
        if not E.relations.target:
            continue
        filt = gm.toric_filtration(E, order, data.toric)
        for F, shift in filt.steps:
            raw.append((tuple(a - e for a, e in zip(shift, eps)), F, i))
    arr = ExceptionalArrangement(A, _merge_strata(A, raw))
    for _, F, _ in arr.strata:
        if F.dim > ctx.d - 2:
            raise InternalInconsistency(f"stratum on face {F.columns} has dimension {F.dim} > d - 2")
    return arr


# -- cross check and Cohen-Macaulay test --------------------------------------

def default_box(ctx: gr.RingContext) -> int:
    """Half-width of the default degree box (env GKZ_DEGREE_BOX overrides)."""
    env = os.environ.get("GKZ_DEGREE_BOX")
    if env:
        return int(env)
    res = ext_data(ctx).resolution
    top = max((x for F in res.modules for s in F.shifts for x in s), default=0)
    return max(8, 2 * top)


def box_degrees(d: int, half_width: int) -> Iterable[Degree]:
    r = range(-half_width, half_width + 1)
    return itertools.product(r, repeat=d)


@dataclass
class CrossCheckReport:
    half_width: int
    degrees_checked: int
    nonzero: List[Tuple[Degree, int, int]]
    mismatches: List[Tuple[Degree, Tuple[int, ...], Tuple[int, ...]]]

    @property
    def ok(self) -> bool:
        return not self.mismatches


def cross_check(ctx: gr.RingContext, half_width: Optional[int] = None,
                degrees: Optional[Iterable[Sequence[int]]] = None,
                raise_on_mismatch: bool = True) -> CrossCheckReport:
    """Compare both paths degree by degree, for cohomological indices 0..d."""
    data = ext_data(ctx)
    if degrees is None:
        hw = default_box(ctx) if half_width is None else half_width
        degrees = box_degrees(ctx.d, hw)
    else:
        hw = -1 if half_width is None else half_width
    count = 0
    nonzero, mismatches = [], []
    for alpha in degrees:
        alpha = tuple(alpha)
        count += 1
        comb = ishida_slice(ctx, alpha).dims
        hom = data.slice(alpha).dims
        if comb != hom:
            mismatches.append((alpha, comb, hom))
        for i, x in enumerate(comb):
            if x and i < ctx.d:
                nonzero.append((alpha, i, x))
    report = CrossCheckReport(hw, count, nonzero, mismatches)
    if mismatches and raise_on_mismatch:
        raise ConventionMismatch(f"{len(mismatches)} degrees disagree", mismatches)
    return report


@dataclass
class CMCertificate:
    is_cm: bool
    projective_dimension: int
    expected: int
    witness: Optional[Tuple] = None


def is_cohen_macaulay(ctx: gr.RingContext) -> CMCertificate:
    arr = exceptional_arrangement(ctx)
    pd = ext_data(ctx).projective_dimension
    expected = ctx.n - ctx.d
    by_arrangement = arr.is_empty()
    by_depth = pd == expected
    if by_arrangement != by_depth:
        raise InternalInconsistency(f"empty arrangement={by_arrangement} but pd={pd}, n-d={expected}")
    return CMCertificate(by_arrangement, pd, expected, None if by_arrangement else arr.strata[0])
