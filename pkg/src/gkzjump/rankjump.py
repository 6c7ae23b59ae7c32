"""Rank-jump queries for the hypergeometric system attached to a matrix.

Parameters are exact: each coordinate is a rational or Gaussian-rational
number (real part, imaginary part).  A parameter jumps exactly when it lies
on a stratum shift + C F of the exceptional arrangement.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

from . import conegeom as cg
from . import gmod as gm
from . import gring as gr
from . import intlinalg as la
from . import localcoh as lc


class InfiniteDimensional(RuntimeError):
    pass


@dataclass(frozen=True)
class ParameterPoint:
    real: Tuple[Fraction, ...]
    imag: Tuple[Fraction, ...] = ()

    @classmethod
    def parse(cls, values: Sequence) -> "ParameterPoint":
        re, im = [], []
        for v in values:
            if isinstance(v, complex):
                re.append(Fraction(v.real))
                im.append(Fraction(v.imag))
            elif isinstance(v, str) and v.strip().endswith(("i", "j")):
                z = complex(v.strip().replace("i", "j"))
                re.append(Fraction(z.real).limit_denominator())
                im.append(Fraction(z.imag).limit_denominator())
            else:
                re.append(Fraction(v))
                im.append(Fraction(0))
        return cls(tuple(re), tuple(im) if any(im) else ())

    @property
    def dim(self) -> int:
        return len(self.real)


@dataclass
class JumpVerdict:
    jumping: bool
    witness: Optional[Tuple]


def is_rank_jumping(ctx: gr.RingContext, beta: ParameterPoint,
                    arrangement: Optional[lc.ExceptionalArrangement] = None) -> JumpVerdict:
    if beta.dim != ctx.d:
        raise ValueError(f"parameter has {beta.dim} coordinates, expected {ctx.d}")
    arr = arrangement or lc.exceptional_arrangement(ctx)
    for s, F, idx in arr.strata:
        if not gm.in_span([b - x for b, x in zip(beta.real, s)], F, ctx.matrix):
            continue
        if beta.imag and not gm.in_span(beta.imag, F, ctx.matrix):
            continue
        return JumpVerdict(True, (s, F, idx))
    return JumpVerdict(False, None)


def is_rank_jumping_float(ctx: gr.RingContext, beta: Sequence[float], tol: float = 1e-9):
    """Approximate query for floating-point parameters.

    Returns (verdict, distance) where distance is the Euclidean distance
    from beta to the nearest stratum; the verdict is only as exact as tol.
    """
    arr = lc.exceptional_arrangement(ctx)
    best = float("inf")
    for s, F, _ in arr.strata:
        diff = [float(b) - float(x) for b, x in zip(beta, s)]
        basis = [[float(v) for v in row] for row in la.row_echelon([list(ctx.matrix.column(j)) for j in F.columns])[0]] \
            if F.columns else []
        best = min(best, _distance_to_span(diff, basis))
    return best <= tol, best


def _distance_to_span(v: List[float], rows: List[List[float]]) -> float:
    # Gram-Schmidt projection residual
    ortho: List[List[float]] = []
    for r in rows:
        w = r[:]
        for q in ortho:
            c = sum(a * b for a, b in zip(w, q))
            w = [a - c * b for a, b in zip(w, q)]
        nrm = sum(a * a for a in w) ** 0.5
        if nrm > 1e-12:
            ortho.append([a / nrm for a in w])
    res = v[:]
    for q in ortho:
        c = sum(a * b for a, b in zip(res, q))
        res = [a - c * b for a, b in zip(res, q)]
    return sum(a * a for a in res) ** 0.5


def generic_rank(ctx: gr.RingContext) -> int:
    """Normalized volume of conv(0, columns): the rank away from jumping parameters."""
    return cg.normalized_volume(ctx.matrix)


def total_degree_functional(A: cg.PointedMatrix) -> Optional[Tuple[Fraction, ...]]:
    """Rational c with c . a_j = 1 for all j, or None."""
    rows = A.to_rows()
    aug = [[rows[i][j] for i in range(A.d)] + [1] for j in range(A.n)]
    R, piv = la.row_echelon(aug)
    if A.d in piv:
        return None
    c = [Fraction(0)] * A.d
    for row, p in zip(R, piv):
        c[p] = row[-1]
    return tuple(c)


def hilbert_multiplicity(ctx: gr.RingContext) -> Optional[int]:
    """Degree of S_A under the total-degree grading, when that grading exists.

    Read off the numerator Q(t) of the Hilbert series Q(t) / (1 - t)^d of
    R / in(I_A), as Q(1).
    """
    if total_degree_functional(ctx.matrix) is None:
        return None
    T = gm.toric_data(ctx).toric
    gb = T.groebner_basis() if T.generators else []
    leads = [gr.lead(gr.vec_from_poly(g), ctx.order)[1] for g in gb]
    K = gr.hilbert_numerator(leads)
    # divide by (1 - t)^(n - d)
    for _ in range(ctx.n - ctx.d):
        K = _divide_one_minus_t(K)
    return sum(K)


def _divide_one_minus_t(K: List[int]) -> List[int]:
    out, carry = [], 0
    for c in K:
        carry += c
        out.append(carry)
    if out[-1] != 0:
        raise ArithmeticError("numerator not divisible by 1 - t")
    return out[:-1] or [0]


@dataclass(frozen=True)
class CoherenceCertificate:
    face: cg.Face
    sample_point: Tuple[Fraction, ...]
    quotient_dimension: int


def coherence_certificate(ctx: gr.RingContext, F: cg.Face, x_sample: Sequence) -> CoherenceCertificate:
    """dim of Q[xi] / (in(I_F) + Euler forms at x_sample), by standard monomials.

    in(I_F) is the ideal of top total-degree forms; the Euler forms are
    sum_j a_ij x_j xi_j for each row i.
    """
    x = tuple(Fraction(v) for v in x_sample)
    if len(x) != ctx.n or any(v == 0 for v in x):
        raise ValueError("sample point needs n nonzero coordinates")
    IF = gm.toric_data(ctx).face_ideals[F.columns]
    init = gr.initial_ideal_total_degree(IF)
    gens = [g for g in init.generators if g]
    for row in ctx.matrix.matrix:
        form = {}
        for j, (a, xj) in enumerate(zip(row, x)):
            if a:
                form[tuple(int(i == j) for i in range(ctx.n))] = a * xj
        if form:
            gens.append(form)
    gb = gr.groebner([gr.vec_from_poly(g) for g in gens], ctx.order)
    std = gr.standard_monomials([gr.poly_from_vec(g) for g in gb], ctx.order, ctx.n)
    if std is None:
        raise InfiniteDimensional(f"infinitely many standard monomials for face {F.columns} at {x}")
    return CoherenceCertificate(F, x, len(std))


def sample_points(n: int, count: int = 3, seed: int = 0) -> List[Tuple[int, ...]]:
    rng = random.Random(seed)
    return [tuple(rng.randrange(1, 18, 2) for _ in range(n)) for _ in range(count)]


def coherence_report(ctx: gr.RingContext, samples: int = 3, seed: int = 0):
    """Certificates per face over several odd-integer samples.

    A face is reported finite when the majority of samples give a finite
    quotient; the failing samples are listed either way.
    """
    out = []
    for F in gm.toric_data(ctx).faces:
        dims, failures = [], []
        for pt in sample_points(ctx.n, samples, seed + len(F.columns)):
            try:
                dims.append(coherence_certificate(ctx, F, pt).quotient_dimension)
            except InfiniteDimensional:
                failures.append(pt)
        out.append({"face": F, "dimensions": dims, "infinite_at": failures,
                    "finite": len(dims) > len(failures)})
    return out
