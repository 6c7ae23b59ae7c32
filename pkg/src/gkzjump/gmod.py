"""Finitely generated Z^d-graded modules over R and their homological algebra.

Shift convention: a free module is described by the degrees of its basis
elements, so a basis element with shift ``a`` spans a copy of R(-a) (its
generator sits in degree ``a``).  Dualizing R(-a) gives R(a), i.e. the
shift is negated.  A graded matrix stores one column per source basis
element; column ``k`` is the image of that basis element, a Vec whose
component indices are target basis indices.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import gcd
from typing import Dict, List, Optional, Sequence, Tuple

from . import conegeom as cg
from . import gring as gr
from .gring import ONE, Poly, Vec

log = logging.getLogger(__name__)

Degree = Tuple[int, ...]


class NotToric(RuntimeError):
    pass


# -- graded free modules and matrices ---------------------------------------

@dataclass(frozen=True)
class GradedFreeModule:
    ring: gr.RingContext = field(compare=False)
    shifts: Tuple[Degree, ...]

    @property
    def rank(self) -> int:
        return len(self.shifts)

    def dual(self) -> "GradedFreeModule":
        return GradedFreeModule(self.ring, tuple(tuple(-x for x in s) for s in self.shifts))


@dataclass
class GradedMatrix:
    ring: gr.RingContext
    target: List[Degree]
    source: List[Degree]
    columns: List[Vec]

    @property
    def shape(self) -> Tuple[int, int]:
        return len(self.target), len(self.source)

    def entry(self, i: int, k: int) -> Poly:
        return {e: c for (comp, e), c in self.columns[k].items() if comp == i}

    def is_homogeneous(self) -> bool:
        ctx = self.ring
        for k, col in enumerate(self.columns):
            for (i, e), _ in col.items():
                deg = tuple(a + b for a, b in zip(self.target[i], ctx.degree(e)))
                if deg != tuple(self.source[k]):
                    return False
        return True

    def transpose(self) -> "GradedMatrix":
        """Matrix of Hom(-, R) applied to this map."""
        cols: List[Vec] = [dict() for _ in self.target]
        for k, col in enumerate(self.columns):
            for (i, e), c in col.items():
                cols[i][(k, e)] = c
        neg = lambda v: tuple(-x for x in v)
        return GradedMatrix(self.ring, [neg(s) for s in self.source], [neg(t) for t in self.target], cols)

    def compose(self, other: "GradedMatrix") -> "GradedMatrix":
        """self o other."""
        cols = []
        for col in other.columns:
            out: Vec = {}
            for (k, e), c in col.items():
                out = gr.vec_add(out, self.columns[k], c, e)
            cols.append(out)
        return GradedMatrix(self.ring, list(self.target), list(other.source), cols)

    def is_zero(self) -> bool:
        return not any(self.columns)

    def has_unit_entry(self) -> bool:
        zero = self.ring.zero()
        return any(e == zero for col in self.columns for (_, e) in col)

    def to_rows(self) -> List[List[Poly]]:
        return [[self.entry(i, k) for k in range(len(self.source))] for i in range(len(self.target))]


def vec_degree(ctx: gr.RingContext, v: Vec, shifts: Sequence[Degree]) -> Degree:
    (i, e) = next(iter(v))
    return tuple(a + b for a, b in zip(shifts[i], ctx.degree(e)))


def module_weight(ctx: gr.RingContext, shifts: Sequence[Degree]):
    """Positive grading W = -h . degree, for pair selection."""
    h = cg._int_certificate(ctx.matrix)
    w = ctx.weights()
    base = [-sum(a * b for a, b in zip(h, s)) for s in shifts]
    return lambda t: base[t[0]] + sum(a * b for a, b in zip(w, t[1]))


def _weight_of(ctx, v: Vec, shifts) -> int:
    return module_weight(ctx, shifts)(next(iter(v)))


@dataclass
class GradedPresentation:
    """coker(relations): generators given by ``relations.target``."""
    relations: GradedMatrix

    @property
    def ring(self) -> gr.RingContext:
        return self.relations.ring

    @property
    def generators(self) -> GradedFreeModule:
        return GradedFreeModule(self.ring, tuple(map(tuple, self.relations.target)))

    @classmethod
    def free(cls, ctx: gr.RingContext, shifts: Sequence[Degree]) -> "GradedPresentation":
        return cls(GradedMatrix(ctx, [tuple(s) for s in shifts], [], []))

    @classmethod
    def cyclic(cls, ideal: gr.GradedIdeal, shift: Optional[Degree] = None) -> "GradedPresentation":
        """(R / I) with its generator in degree ``shift``."""
        ctx = ideal.ring
        shift = tuple(shift) if shift is not None else (0,) * ctx.d
        cols, src = [], []
        for g in ideal.generators:
            if not g:
                continue
            cols.append(gr.vec_from_poly(g))
            src.append(tuple(a + b for a, b in zip(shift, ctx.degree(next(iter(g))))))
        return cls(GradedMatrix(ctx, [shift], src, cols))

    def is_zero(self) -> bool:
        return not prune(self).relations.target


# -- Groebner helpers for submodules -----------------------------------------

def submodule_gb(ctx: gr.RingContext, cols: Sequence[Vec], shifts: Sequence[Degree], track=False):
    return gr.GroebnerBasis(ctx.order, module_weight(ctx, shifts), track=track).extend(cols)


def _minimal_subset(ctx, cols: List[Vec], shifts) -> List[int]:
    """Indices of a minimal generating subset (greedy by increasing weight)."""
    W = module_weight(ctx, shifts)
    idx = sorted((k for k, c in enumerate(cols) if c),
                 key=lambda k: (W(next(iter(cols[k]))), k))
    G = gr.GroebnerBasis(ctx.order, W)
    keep = []
    for k in idx:
        if G.contains(cols[k]):
            continue
        keep.append(k)
        G.extend([cols[k]])
    return sorted(keep)


def syzygies(m: GradedMatrix, minimal: bool = True) -> GradedMatrix:
    """Generators of ker(m) as the columns of a graded matrix into m.source."""
    ctx = m.ring
    cols = [c for c in m.columns]
    live = [k for k, c in enumerate(cols) if c]
    G = submodule_gb(ctx, [cols[k] for k in live], m.target, track=True)
    syz = G.input_syzygies([cols[k] for k in live])
    # re-index to all source columns; zero columns are free syzygies
    out: List[Vec] = []
    for s in syz:
        out.append({(live[i], e): c for (i, e), c in s.items()})
    zero = ctx.zero()
    for k, c in enumerate(cols):
        if not c:
            out.append({(k, zero): ONE})
    out = [gr.normalize(v, ctx.order) for v in out if v]
    if minimal and out:
        keep = _minimal_subset(ctx, out, m.source)
        out = [out[k] for k in keep]
    else:
        out = _dedupe(out)
    out.sort(key=lambda v: (_weight_of(ctx, v, m.source), sorted(v.items())))
    src = [vec_degree(ctx, v, m.source) for v in out]
    return GradedMatrix(ctx, list(m.source), src, out)


def _dedupe(vs):
    seen, out = set(), []
    for v in vs:
        key = tuple(sorted(v.items()))
        if key not in seen:
            seen.add(key)
            out.append(v)
    return out


def prune(M: GradedPresentation) -> GradedPresentation:
    """Remove generators killed by relations with a unit entry, and
    non-minimal relations.  Returns an isomorphic presentation."""
    ctx = M.ring
    target = list(M.relations.target)
    cols = [dict(c) for c in M.relations.columns]
    src = list(M.relations.source)
    zero = ctx.zero()
    alive = list(range(len(target)))
    while True:
        hit = None
        for k, col in enumerate(cols):
            for (i, e), c in col.items():
                if e == zero:
                    hit = (k, i, c)
                    break
            if hit:
                break
        if hit is None:
            break
        k, i, c = hit
        # basis element i = -(1/c) * (col_k - c e_i); substitute everywhere
        piv = cols[k]
        new_cols, new_src = [], []
        for kk, col in enumerate(cols):
            if kk == k:
                continue
            a = {e: v for (ii, e), v in col.items() if ii == i}
            if a:
                col = gr.vec_add(col, gr.vec_mul_poly(a, piv), -ONE / c)
            new_cols.append(col)
            new_src.append(src[kk])
        cols, src = new_cols, new_src
        alive.remove(i)
        target[i] = None
    remap = {old: new for new, old in enumerate(alive)}
    cols = [{(remap[i], e): c for (i, e), c in col.items()} for col in cols]
    target = [target[i] for i in alive]
    pairs = [(c, s) for c, s in zip(cols, src) if c]
    cols = [gr.normalize(c, ctx.order) for c, _ in pairs]
    src = [s for _, s in pairs]
    if cols:
        keep = _minimal_subset(ctx, cols, target)
        cols = [cols[k] for k in keep]
        src = [src[k] for k in keep]
    return GradedPresentation(GradedMatrix(ctx, target, src, cols))


# -- resolutions ---------------------------------------------------------------

@dataclass
class GradedResolution:
    modules: List[GradedFreeModule]
    maps: List[GradedMatrix]
    minimal: bool = True

    @property
    def length(self) -> int:
        return len(self.maps)

    def ranks(self) -> List[int]:
        return [F.rank for F in self.modules]

    def check_complex(self) -> bool:
        return all(self.maps[i].compose(self.maps[i + 1]).is_zero()
                   for i in range(len(self.maps) - 1))


def minimal_free_resolution(M: GradedPresentation, max_length: Optional[int] = None) -> GradedResolution:
    ctx = M.ring
    limit = ctx.n if max_length is None else max_length
    P = prune(M)
    modules = [GradedFreeModule(ctx, tuple(map(tuple, P.relations.target)))]
    maps: List[GradedMatrix] = []
    cur = P.relations
    while cur.columns and len(maps) < limit:
        maps.append(cur)
        modules.append(GradedFreeModule(ctx, tuple(map(tuple, cur.source))))
        cur = syzygies(cur)
    if cur.columns:
        log.warning("resolution truncated at length %d", limit)
    return GradedResolution(modules, maps, minimal=True)


def projective_dimension(res: GradedResolution) -> int:
    return res.length


def _dual_map(res: GradedResolution, k: int) -> GradedMatrix:
    """Transpose of the map F_k -> F_{k-1}; zero maps at the ends."""
    ctx = res.modules[0].ring
    dual = lambda F: [tuple(-x for x in s) for s in F.shifts]
    if 1 <= k <= res.length:
        return res.maps[k - 1].transpose()
    if k == 0:
        return GradedMatrix(ctx, dual(res.modules[0]), [], [])
    # k = length + 1 : F_{length}^* -> 0
    top = dual(res.modules[res.length]) if res.length < len(res.modules) else []
    return GradedMatrix(ctx, [], top, [dict() for _ in top])


def ext_module(M: GradedPresentation, j: int, resolution: Optional[GradedResolution] = None) -> GradedPresentation:
    """Presentation of Ext^j_R(M, R) from the dualized minimal resolution."""
    res = resolution or minimal_free_resolution(M)
    ctx = M.ring
    if j < 0 or j > res.length:
        return GradedPresentation(GradedMatrix(ctx, [], [], []))
    Fj_dual = [tuple(-x for x in s) for s in res.modules[j].shifts]
    out_map = _dual_map(res, j + 1)  # F_j^* -> F_{j+1}^*
    in_map = _dual_map(res, j)       # F_{j-1}^* -> F_j^*
    if out_map.target:
        K = syzygies(out_map)
    else:
        zero = ctx.zero()
        K = GradedMatrix(ctx, Fj_dual, list(Fj_dual), [{(i, zero): ONE} for i in range(len(Fj_dual))])
    if not K.columns:
        return GradedPresentation(GradedMatrix(ctx, [], [], []))
    t = len(K.columns)
    combined = GradedMatrix(ctx, Fj_dual, list(K.source) + list(in_map.source),
                            list(K.columns) + list(in_map.columns))
    S = syzygies(combined, minimal=False)
    rel_cols, rel_src = [], []
    for col, deg in zip(S.columns, S.source):
        part = {(i, e): c for (i, e), c in col.items() if i < t}
        if part:
            rel_cols.append(part)
            rel_src.append(deg)
    pres = GradedPresentation(GradedMatrix(ctx, list(K.source), rel_src, rel_cols))
    return prune(pres)


# -- degree strands and Hilbert functions -----------------------------------

def _int_rank(rows: List[List[Fraction]]) -> int:
    """Exact rank by fraction-free elimination on integer-scaled rows."""
    M = []
    for r in rows:
        if all(type(x) is int for x in r):
            if any(r):
                M.append(list(r))
            continue
        den = 1
        for x in r:
            if x:
                den = den * x.denominator // gcd(den, x.denominator)
        ir = [int(x * den) for x in r]
        if any(ir):
            M.append(ir)
    rank = 0
    ncols = len(M[0]) if M else 0
    for col in range(ncols):
        piv = next((i for i in range(rank, len(M)) if M[i][col]), None)
        if piv is None:
            continue
        M[rank], M[piv] = M[piv], M[rank]
        p = M[rank]
        for i in range(rank + 1, len(M)):
            a = M[i][col]
            if a:
                b = p[col]
                r = [b * x - a * y for x, y in zip(M[i], p)]
                g = 0
                for x in r:
                    g = gcd(g, x)
                M[i] = [x // g for x in r] if g > 1 else r
        rank += 1
        if rank == len(M):
            break
    return rank


def strand(m: GradedMatrix, beta: Degree):
    """Matrix of m in degree beta as rows over target monomials.

    Returns (target basis, list of image rows) where each image row is a
    dict {target basis index: coefficient}.
    """
    ctx = m.ring
    A = ctx.matrix
    tbasis = {}
    for i, a in enumerate(m.target):
        for u in cg.semigroup_fiber(A, tuple(x - y for x, y in zip(a, beta))):
            tbasis[(i, u)] = len(tbasis)
    images = []
    if not tbasis:
        return tbasis, images
    for k, b in enumerate(m.source):
        col = _integer_column(m.columns[k])
        if not col:
            continue
        for u in cg.semigroup_fiber(A, tuple(x - y for x, y in zip(b, beta))):
            img = {}
            for (i, e), c in col:
                key = (i, tuple(x + y for x, y in zip(e, u)))
                idx = tbasis[key]
                img[idx] = img.get(idx, 0) + c
            images.append(img)
    return tbasis, images


_INT_COLUMNS: Dict[int, Tuple] = {}


def _integer_column(col: Vec):
    """Column scaled to coprime integer coefficients (rank is unchanged)."""
    key = id(col)
    hit = _INT_COLUMNS.get(key)
    if hit is not None and hit[0] is col:
        return hit[1]
    den = 1
    for c in col.values():
        den = den * c.denominator // gcd(den, c.denominator)
    out = tuple((t, int(c * den)) for t, c in col.items())
    _INT_COLUMNS[key] = (col, out)
    return out


def strand_rank(images, size: int) -> int:
    rows = [[img.get(j, 0) for j in range(size)] for img in images if any(img.values())]
    return _int_rank(rows) if rows else 0


def hilbert_function(M: GradedPresentation, beta: Sequence[int]) -> int:
    """dim_Q M_beta."""
    beta = tuple(beta)
    tb, imgs = strand(M.relations, beta)
    if not tb:
        return 0
    return len(tb) - strand_rank(imgs, len(tb))


def free_hilbert_function(ctx: gr.RingContext, shifts: Sequence[Degree], beta: Sequence[int]) -> int:
    return sum(len(cg.semigroup_fiber(ctx.matrix, tuple(a - b for a, b in zip(s, beta)))) for s in shifts)


def cohomology_dimension(res: GradedResolution, j: int, beta: Sequence[int]) -> int:
    """dim Ext^j_R(M, R)_beta computed directly on the dualized complex strand."""
    beta = tuple(beta)
    out_map = _dual_map(res, j + 1)
    in_map = _dual_map(res, j)
    ctx = res.modules[0].ring
    size = free_hilbert_function(ctx, out_map.source, beta) if out_map.source else 0
    if size == 0:
        return 0
    tb_in, imgs_in = strand(in_map, beta) if in_map.columns else ({}, [])
    rank_in = strand_rank(imgs_in, len(tb_in)) if tb_in else 0
    if out_map.target:
        tb_out, imgs_out = strand(out_map, beta)
        rank_out = strand_rank(imgs_out, len(tb_out)) if tb_out else 0
    else:
        rank_out = 0
    return size - rank_out - rank_in


# -- ideals and colon computations ------------------------------------------

def _ideal_from_first_coordinates(ctx, syz: GradedMatrix) -> List[Poly]:
    gens = []
    for col in syz.columns:
        p = {e: c for (i, e), c in col.items() if i == 0}
        if p:
            gens.append(gr.poly_from_vec(gr.normalize(gr.vec_from_poly(p), ctx.order)))
    return gens


def annihilator_of_element(M: GradedPresentation, x: Vec) -> gr.GradedIdeal:
    """(N : x) where N is the relation submodule."""
    ctx = M.ring
    rel = M.relations
    if not x:
        return gr.GradedIdeal(ctx, [gr.monomial(ctx.zero())])
    deg = vec_degree(ctx, x, rel.target)
    m = GradedMatrix(ctx, list(rel.target), [deg] + list(rel.source), [x] + list(rel.columns))
    return gr.GradedIdeal(ctx, _ideal_from_first_coordinates(ctx, syzygies(m, minimal=False)))


def ideal_quotient(J: gr.GradedIdeal, f: Poly) -> gr.GradedIdeal:
    """(J : f)."""
    ctx = J.ring
    M = GradedPresentation.cyclic(J)
    return annihilator_of_element(M, gr.vec_from_poly(f))


def ideal_intersection(I: gr.GradedIdeal, J: gr.GradedIdeal) -> gr.GradedIdeal:
    ctx = I.ring
    zero = ctx.zero()
    origin = (0,) * ctx.d
    cols = [{(0, zero): ONE, (1, zero): ONE}]
    src = [origin]
    for g in I.generators:
        if g:
            cols.append(gr.vec_from_poly(g, 0))
            src.append(ctx.degree(next(iter(g))))
    for g in J.generators:
        if g:
            cols.append(gr.vec_from_poly(g, 1))
            src.append(ctx.degree(next(iter(g))))
    m = GradedMatrix(ctx, [origin, origin], src, cols)
    return gr.GradedIdeal(ctx, _ideal_from_first_coordinates(ctx, syzygies(m, minimal=False)))


def ideal_colon_ideal(J: gr.GradedIdeal, I: gr.GradedIdeal) -> gr.GradedIdeal:
    """(J : I) as the intersection of (J : g) over generators g of I."""
    out = None
    for g in I.generators:
        if not g:
            continue
        q = ideal_quotient(J, g)
        out = q if out is None else ideal_intersection(out, q)
    return out if out is not None else gr.GradedIdeal(J.ring, [gr.monomial(J.ring.zero())])


# -- toric structure -----------------------------------------------------------

class ToricData:
    """Face lattice, toric ideal and face ideals of a ring, computed once."""

    def __init__(self, ctx: gr.RingContext):
        self.ctx = ctx
        self.lattice = cg.face_lattice(ctx.matrix)
        self.toric = gr.toric_ideal(ctx)
        self.face_ideals = {F.columns: gr.face_ideal(ctx, F, self.toric) for F in self.lattice.faces}

    @property
    def faces(self) -> List[cg.Face]:
        return self.lattice.faces

    def face(self, cols) -> cg.Face:
        return self.lattice.by_columns(cols)

    def semigroup_ring(self) -> GradedPresentation:
        return GradedPresentation.cyclic(self.toric)

    def face_ring(self, F: cg.Face, shift: Optional[Degree] = None) -> GradedPresentation:
        return GradedPresentation.cyclic(self.face_ideals[F.columns], shift)

    def minimal_prime_face(self, J: gr.GradedIdeal) -> Optional[cg.Face]:
        """Largest face F with J contained in I_F (a minimal prime of J)."""
        best = None
        for F in sorted(self.faces, key=lambda f: (-len(f.columns), f.columns)):
            if self.face_ideals[F.columns].contains_ideal(J):
                if best is None or set(best.columns) < set(F.columns):
                    best = F
                if best is F:
                    return F
        return best

    def equals_face_ideal(self, J: gr.GradedIdeal, F: cg.Face) -> bool:
        IF = self.face_ideals[F.columns]
        return IF.contains_ideal(J) and J.contains_ideal(IF)


_TORIC_CACHE: Dict[Tuple, ToricData] = {}


def toric_data(ctx: gr.RingContext) -> ToricData:
    key = ctx.matrix.matrix
    td = _TORIC_CACHE.get(key)
    if td is None:
        td = _TORIC_CACHE[key] = ToricData(ctx)
    return td


# -- toric filtrations and quasi-degrees -------------------------------------

@dataclass
class ToricFiltration:
    steps: List[Tuple[cg.Face, Degree]]

    def hilbert_function(self, A: cg.PointedMatrix, beta: Sequence[int]) -> int:
        return sum(face_ring_hilbert(A, F, shift, beta) for F, shift in self.steps)


def face_ring_hilbert(A: cg.PointedMatrix, F: cg.Face, shift: Sequence[int], beta: Sequence[int]) -> int:
    """dim (S_F)(-shift)_beta, i.e. [shift - beta in N F]."""
    v = tuple(a - b for a, b in zip(shift, beta))
    if sum(p * x for p, x in zip(F.functional, v)) != 0:
        return 0
    if not F.columns:
        return int(not any(v))
    return int(cg.semigroup_member(A, v)[0])


def _find_toric_element(M: GradedPresentation, td: ToricData, x: Vec):
    """Multiply x by a homogeneous g so that ann(g x) is a face ideal."""
    ctx = M.ring
    J = annihilator_of_element(M, x)
    F = td.minimal_prime_face(J)
    if F is None:
        raise NotToric("annihilator lies in no face ideal")
    if td.equals_face_ideal(J, F):
        return x, F
    K = ideal_colon_ideal(J, td.face_ideals[F.columns])
    W = lambda g: sum(a * b for a, b in zip(ctx.weights(), next(iter(g))))
    for g in sorted((g for g in K.generators if g), key=lambda g: (W(g), sorted(g.items()))):
        if J.contains(g):
            continue
        y = gr.vec_mul_poly(g, x)
        if td.equals_face_ideal(gr.GradedIdeal(ctx, ideal_quotient(J, g).generators), F):
            return y, F
    raise NotToric(f"no witness with annihilator I_F for F={F.columns}")


def toric_filtration(M: GradedPresentation, order: str = "forward",
                     td: Optional[ToricData] = None) -> ToricFiltration:
    """Successively split off cyclic submodules isomorphic to shifted S_F.

    ``order`` picks which surviving generator seeds the next extraction
    ("forward" or "reverse"); any order gives a valid filtration.
    """
    ctx = M.ring
    td = td or toric_data(ctx)
    P = prune(M)
    steps = []
    guard = 0
    while P.relations.target:
        guard += 1
        if guard > 10000:
            raise RuntimeError("toric filtration did not terminate")
        rel = P.relations
        G = submodule_gb(ctx, rel.columns, rel.target)
        zero = ctx.zero()
        gens = [i for i in range(len(rel.target)) if not G.contains({(i, zero): ONE})]
        if order == "reverse":
            gens = gens[::-1]
        i = gens[0]
        y, F = _find_toric_element(P, td, {(i, zero): ONE})
        deg = vec_degree(ctx, y, rel.target)
        steps.append((F, deg))
        P = prune(GradedPresentation(GradedMatrix(ctx, list(rel.target), list(rel.source) + [deg],
                                                  list(rel.columns) + [y])))
    return ToricFiltration(steps)


def _canonical_shift(shift: Sequence, F: cg.Face, A: cg.PointedMatrix) -> Tuple[Fraction, ...]:
    """Representative of shift + Q F: zero out the pivot coordinates of an
    echelon basis of the span of F."""
    s = [Fraction(x) for x in shift]
    if not F.columns:
        return tuple(s)
    from . import intlinalg as la
    basis, piv = la.row_echelon([list(A.column(j)) for j in F.columns])
    for row, p in zip(basis, piv):
        c = s[p]
        if c:
            s = [a - c * b for a, b in zip(s, row)]
    return tuple(s)


def in_span(v: Sequence, F: cg.Face, A: cg.PointedMatrix) -> bool:
    return not any(_canonical_shift(v, F, A))


@dataclass
class QuasiDegreeSet:
    """Finite union of translated face spans  shift + C F, in canonical form."""
    matrix: cg.PointedMatrix
    strata: List[Tuple[Tuple[Fraction, ...], cg.Face]] = field(default_factory=list)

    def add(self, shift: Sequence, F: cg.Face):
        self.strata.append((_canonical_shift(shift, F, self.matrix), F))
        self.canonicalize()

    def canonicalize(self):
        uniq = {}
        for s, F in self.strata:
            uniq[(s, F.columns)] = (s, F)
        items = list(uniq.values())
        keep = []
        for a, (s, F) in enumerate(items):
            covered = False
            for b, (t, G) in enumerate(items):
                if a == b or not set(F.columns) <= set(G.columns):
                    continue
                if F.columns == G.columns:
                    continue
                if in_span([x - y for x, y in zip(s, t)], G, self.matrix):
                    covered = True
                    break
            if not covered:
                keep.append((s, F))
        keep.sort(key=lambda sf: (sf[1].dim, sf[1].columns, sf[0]))
        self.strata = keep

    def contains(self, point: Sequence) -> bool:
        return self.witness(point) is not None

    def witness(self, point: Sequence):
        for s, F in self.strata:
            if in_span([Fraction(x) - y for x, y in zip(point, s)], F, self.matrix):
                return (s, F)
        return None

    def __eq__(self, other):
        return isinstance(other, QuasiDegreeSet) and \
            [(s, F.columns) for s, F in self.strata] == [(s, F.columns) for s, F in other.strata]

    def __len__(self):
        return len(self.strata)


def quasidegrees(M: GradedPresentation, filtration: Optional[ToricFiltration] = None,
                 order: str = "forward") -> QuasiDegreeSet:
    """Zariski closure of the true degrees, from a toric filtration.

    Each step (F, a) contributes tdeg(S_F(-a)) = a - N F, whose closure is a + C F.
    """
    filt = filtration or toric_filtration(M, order)
    Q = QuasiDegreeSet(M.ring.matrix)
    for F, shift in filt.steps:
        Q.strata.append((_canonical_shift(shift, F, M.ring.matrix), F))
    Q.canonicalize()
    return Q
