"""The Z^d-graded polynomial ring R = Q[d_1, ..., d_n] with deg(d_j) = -a_j.

Polynomials are dicts ``{exponent tuple: Fraction}``.  Module elements are
dicts ``{(component, exponent tuple): Fraction}``; an ideal is a submodule
of the rank-one free module, so a single Buchberger engine serves both.
Working over Q instead of C loses nothing: all defining data are rational.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd, lcm
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from . import conegeom as cg
from . import intlinalg as la

Exp = Tuple[int, ...]
Poly = Dict[Exp, Fraction]
Term = Tuple[int, Exp]
Vec = Dict[Term, Fraction]

ONE = Fraction(1)


# -- monomial orders ---------------------------------------------------------

class TermOrder:
    """Degree reverse lexicographic order, optionally with eliminated variables.

    ``elim=k`` makes the LAST k variables a block that dominates the others
    (block order, each block degrevlex); this is an elimination order for
    those variables.  Module terms compare term-over-position, with smaller
    component indices winning ties.
    """

    def __init__(self, nvars: int, elim: int = 0):
        self.nvars = nvars
        self.elim = elim
        self._cache: Dict[Exp, tuple] = {}

    def key(self, e: Exp) -> tuple:
        k = self._cache.get(e)
        if k is None:
            if self.elim:
                head, tail = e[self.nvars - self.elim:], e[:self.nvars - self.elim]
                k = (sum(head), tuple(-x for x in reversed(head)),
                     sum(tail), tuple(-x for x in reversed(tail)))
            else:
                k = (sum(e), tuple(-x for x in reversed(e)))
            self._cache[e] = k
        return k

    def tkey(self, t: Term) -> tuple:
        return (self.key(t[1]), -t[0])

    def __eq__(self, other):
        return isinstance(other, TermOrder) and (self.nvars, self.elim) == (other.nvars, other.elim)

    def __hash__(self):
        return hash((self.nvars, self.elim))

    def describe(self) -> str:
        return "degrevlex" if not self.elim else f"elim{self.elim}-degrevlex"


# -- polynomial helpers -----------------------------------------------------

def poly_from_terms(terms: Iterable[Tuple[Exp, object]]) -> Poly:
    out: Poly = {}
    for e, c in terms:
        c = Fraction(c)
        v = out.get(e, 0) + c
        if v:
            out[e] = v
        else:
            out.pop(e, None)
    return out


def monomial(e: Sequence[int], c=1) -> Poly:
    return {tuple(e): Fraction(c)} if c else {}


def binomial(mu: Sequence[int], nu: Sequence[int]) -> Poly:
    return poly_from_terms([(tuple(mu), 1), (tuple(nu), -1)])


def poly_add(f: Poly, g: Poly, c=ONE) -> Poly:
    out = dict(f)
    for e, a in g.items():
        v = out.get(e, 0) + c * a
        if v:
            out[e] = v
        else:
            out.pop(e, None)
    return out


def poly_mul(f: Poly, g: Poly) -> Poly:
    out: Poly = {}
    for e1, a in f.items():
        for e2, b in g.items():
            e = tuple(x + y for x, y in zip(e1, e2))
            v = out.get(e, 0) + a * b
            if v:
                out[e] = v
            else:
                out.pop(e, None)
    return out


def poly_scale(f: Poly, c) -> Poly:
    return {e: c * a for e, a in f.items()} if c else {}


def vec_from_poly(f: Poly, comp: int = 0) -> Vec:
    return {(comp, e): c for e, c in f.items()}


def poly_from_vec(v: Vec) -> Poly:
    return {e: c for (_, e), c in v.items()}


def vec_add(f: Vec, g: Vec, c=ONE, shift: Optional[Exp] = None) -> Vec:
    """f + c * x^shift * g."""
    out = dict(f)
    if shift is None:
        for t, a in g.items():
            v = out.get(t, 0) + c * a
            if v:
                out[t] = v
            else:
                out.pop(t, None)
    else:
        for (i, e), a in g.items():
            t = (i, tuple(x + y for x, y in zip(e, shift)))
            v = out.get(t, 0) + c * a
            if v:
                out[t] = v
            else:
                out.pop(t, None)
    return out


def vec_mul_poly(f: Poly, v: Vec) -> Vec:
    out: Vec = {}
    for e1, a in f.items():
        for (i, e2), b in v.items():
            t = (i, tuple(x + y for x, y in zip(e1, e2)))
            s = out.get(t, 0) + a * b
            if s:
                out[t] = s
            else:
                out.pop(t, None)
    return out


def lead(v: Vec, order: TermOrder) -> Term:
    return max(v, key=order.tkey)


def divides(a: Exp, b: Exp) -> bool:
    return all(x <= y for x, y in zip(a, b))


def normalize(v: Vec, order: TermOrder) -> Vec:
    """Strip content: scale to integer coefficients with positive, coprime lead."""
    if not v:
        return v
    den = 1
    for c in v.values():
        den = lcm(den, c.denominator)
    g = 0
    for c in v.values():
        g = gcd(g, int(c * den))
    s = Fraction(den, g)
    if v[lead(v, order)] < 0:
        s = -s
    return {t: c * s for t, c in v.items()}


def make_monic(v: Vec, order: TermOrder) -> Vec:
    if not v:
        return v
    c = v[lead(v, order)]
    return {t: a / c for t, a in v.items()}


# -- Buchberger --------------------------------------------------------------

@dataclass
class GBStats:
    pairs: int = 0
    zero_reductions: int = 0
    skipped: int = 0


class GroebnerBasis:
    """Incremental Buchberger for submodules of a free module.

    With ``track=True`` every basis element carries its expression in the
    input generators and each processed S-pair leaves a syzygy among basis
    elements (Schreyer), from which syzygies of the inputs follow.
    """

    def __init__(self, order: TermOrder, weight=None, track: bool = False):
        self.order = order
        self.weight = weight or (lambda t: sum(t[1]))
        self.track = track
        self.basis: List[Vec] = []
        self.leads: List[Term] = []
        self.cofactors: List[Vec] = []
        self.pair_syz: List[Vec] = []
        self.reductions_of_inputs: List[Vec] = []
        self.ninputs = 0
        self.pending: Dict[Tuple[int, int], tuple] = {}
        self.stats = GBStats()

    # reduction ---------------------------------------------------------
    def _reducer(self, t: Term) -> int:
        comp, e = t
        for k, (c2, e2) in enumerate(self.leads):
            if c2 == comp and divides(e2, e):
                return k
        return -1

    def reduce(self, f: Vec, full: bool = True, cof: Optional[Vec] = None, quot: Optional[Vec] = None):
        """Normal form of f.  ``cof`` tracks f's expression in inputs and
        ``quot`` collects the quotients against basis elements (as a Vec over
        basis indices, component = basis index, exponent = multiplier)."""
        order = self.order
        f = dict(f)
        rem: Vec = {}
        while f:
            t = max(f, key=order.tkey)
            c = f[t]
            k = self._reducer(t)
            if k < 0:
                if not full:
                    rem.update(f)
                    break
                rem[t] = c
                del f[t]
                continue
            g = self.basis[k]
            lt = self.leads[k]
            q = c / g[lt]
            shift = tuple(x - y for x, y in zip(t[1], lt[1]))
            f = vec_add(f, g, -q, shift)
            if cof is not None:
                cof_new = vec_add(cof, self.cofactors[k], -q, shift)
                cof.clear()
                cof.update(cof_new)
            if quot is not None:
                key = (k, shift)
                v = quot.get(key, 0) + q
                if v:
                    quot[key] = v
                else:
                    quot.pop(key, None)
        return rem

    # pair bookkeeping ---------------------------------------------------
    def _add_element(self, g: Vec, cof: Optional[Vec]):
        idx = len(self.basis)
        self.basis.append(g)
        lt = lead(g, self.order)
        self.leads.append(lt)
        self.cofactors.append(cof if cof is not None else {})
        for i, lti in enumerate(self.leads[:-1]):
            if lti[0] != lt[0]:
                continue
            m = tuple(max(x, y) for x, y in zip(lti[1], lt[1]))
            self.pending[(i, idx)] = (self.weight((lt[0], m)), self.order.key(m), i, idx)

    def _chain_criterion(self, i: int, j: int) -> bool:
        comp, ei = self.leads[i]
        m = tuple(max(x, y) for x, y in zip(ei, self.leads[j][1]))
        for k, (ck, ek) in enumerate(self.leads):
            if k in (i, j) or ck != comp or not divides(ek, m):
                continue
            a, b = (min(i, k), max(i, k)), (min(j, k), max(j, k))
            if a not in self.pending and b not in self.pending:
                return True
        return False

    def extend(self, gens: Iterable[Vec]):
        for f in gens:
            idx = self.ninputs
            self.ninputs += 1
            cof = {(idx, (0,) * self.order.nvars): ONE} if self.track else None
            if not f:
                continue
            g = self.reduce(f, full=False, cof=cof)
            if g:
                self._add_element(g, cof)
        self._run()
        return self

    def _run(self):
        while self.pending:
            pair = min(self.pending, key=self.pending.get)
            del self.pending[pair]
            i, j = pair
            self.stats.pairs += 1
            if self._chain_criterion(i, j):
                self.stats.skipped += 1
                continue
            gi, gj = self.basis[i], self.basis[j]
            li, lj = self.leads[i], self.leads[j]
            m = tuple(max(x, y) for x, y in zip(li[1], lj[1]))
            si = tuple(x - y for x, y in zip(m, li[1]))
            sj = tuple(x - y for x, y in zip(m, lj[1]))
            ci, cj = ONE / gi[li], ONE / gj[lj]
            s = vec_add(vec_add({}, gi, ci, si), gj, -cj, sj)
            cof = None
            if self.track:
                cof = vec_add(vec_add({}, self.cofactors[i], ci, si), self.cofactors[j], -cj, sj)
            quot: Optional[Vec] = {} if self.track else None
            h = self.reduce(s, full=False, cof=cof, quot=quot)
            if self.track:
                syz = {(i, si): ci}
                syz = vec_add(syz, {(j, sj): cj}, -ONE)
                syz = vec_add(syz, quot, -ONE)
            if h:
                new_idx = len(self.basis)
                self._add_element(h, cof)
                if self.track:
                    syz = vec_add(syz, {(new_idx, (0,) * self.order.nvars): ONE}, -ONE)
            else:
                self.stats.zero_reductions += 1
            if self.track and syz:
                self.pair_syz.append(syz)

    # results ------------------------------------------------------------
    def reduced(self) -> List[Vec]:
        """Reduced, monic basis sorted by decreasing lead term."""
        order = self.order
        idx = sorted(range(len(self.basis)), key=lambda k: order.tkey(self.leads[k]))
        keep: List[int] = []
        for k in idx:
            c, e = self.leads[k]
            if any(self.leads[j][0] == c and divides(self.leads[j][1], e) for j in keep):
                continue
            keep.append(k)
        mini = GroebnerBasis(order, self.weight)
        mini.basis = [self.basis[k] for k in keep]
        mini.leads = [self.leads[k] for k in keep]
        out = []
        for k in range(len(keep)):
            g = mini.basis[k]
            lt = mini.leads[k]
            others = GroebnerBasis(order, self.weight)
            others.basis = [b for j, b in enumerate(mini.basis) if j != k]
            others.leads = [l for j, l in enumerate(mini.leads) if j != k]
            tail = dict(g)
            del tail[lt]
            tail = others.reduce(tail)
            tail[lt] = g[lt]
            out.append(make_monic(tail, order))
        out.sort(key=lambda v: order.tkey(lead(v, order)), reverse=True)
        return out

    def contains(self, f: Vec) -> bool:
        return not self.reduce(f, full=False)

    def input_syzygies(self, inputs: Sequence[Vec]) -> List[Vec]:
        """Generators of the syzygies of the input generators (Schreyer).

        Syzygies are returned as Vecs whose component is the input index.
        """
        assert self.track
        zero = (0,) * self.order.nvars
        out: List[Vec] = []
        for s in self.pair_syz:
            t: Vec = {}
            for (k, e), c in s.items():
                t = vec_add(t, self.cofactors[k], c, e)
            if t:
                out.append(t)
        for l, f in enumerate(inputs):
            quot: Vec = {}
            rest = self.reduce(f, full=False, quot=quot)
            assert not rest
            t: Vec = {(l, zero): ONE}
            for (k, e), c in quot.items():
                t = vec_add(t, self.cofactors[k], -c, e)
            if t:
                out.append(t)
        return out


def groebner(gens: Iterable[Vec], order: TermOrder, weight=None) -> List[Vec]:
    return GroebnerBasis(order, weight).extend(gens).reduced()


# -- ring context and ideals -------------------------------------------------

@dataclass(frozen=True)
class RingContext:
    matrix: cg.PointedMatrix
    order: TermOrder = field(compare=False)

    @property
    def n(self) -> int:
        return self.matrix.n

    @property
    def d(self) -> int:
        return self.matrix.d

    @property
    def variable_degrees(self) -> List[Tuple[int, ...]]:
        return [tuple(-a for a in col) for col in self.matrix.columns]

    @property
    def epsilon(self) -> Tuple[int, ...]:
        return tuple(sum(r) for r in self.matrix.matrix)

    def weights(self) -> Tuple[int, ...]:
        """Positive integer weights h . a_j of the variables."""
        h = cg._int_certificate(self.matrix)
        return tuple(sum(x * y for x, y in zip(h, col)) for col in self.matrix.columns)

    def degree(self, e: Exp) -> Tuple[int, ...]:
        return tuple(-x for x in self.matrix.apply(e))

    def is_homogeneous(self, f: Poly) -> bool:
        return len({self.degree(e) for e in f}) <= 1

    def zero(self) -> Exp:
        return (0,) * self.n


def make_ring(M) -> RingContext:
    A = M if isinstance(M, cg.PointedMatrix) else cg.make_pointed_matrix(M)
    return RingContext(A, TermOrder(A.n))


@dataclass
class GradedIdeal:
    ring: RingContext
    generators: List[Poly]
    _gb: Optional[List[Poly]] = field(default=None, repr=False)

    def groebner_basis(self) -> List[Poly]:
        if self._gb is None:
            self._gb = buchberger(self)
        return self._gb

    def contains(self, f: Poly) -> bool:
        return not normal_form(f, self.groebner_basis(), self.ring.order)

    def contains_ideal(self, other: "GradedIdeal") -> bool:
        return all(self.contains(g) for g in other.generators)

    def __eq__(self, other):
        return self.contains_ideal(other) and other.contains_ideal(self)


def buchberger(I: GradedIdeal) -> List[Poly]:
    """Reduced Groebner basis of I in the ring's order."""
    w = I.ring.weights()
    weight = lambda t: sum(a * b for a, b in zip(w, t[1]))
    gb = groebner([vec_from_poly(f) for f in I.generators if f], I.ring.order, weight)
    return [poly_from_vec(g) for g in gb]


def normal_form(f: Poly, gb: Sequence[Poly], order: TermOrder) -> Poly:
    G = GroebnerBasis(order)
    G.basis = [vec_from_poly(g) for g in gb]
    G.leads = [lead(g, order) for g in G.basis]
    return poly_from_vec(G.reduce(vec_from_poly(f)))


def saturate(I: GradedIdeal, f: Poly) -> GradedIdeal:
    """(I : f^oo) via I + <1 - t f> and elimination of t."""
    n = I.ring.n
    order = TermOrder(n + 1, elim=1)
    ext = lambda e: tuple(e) + (0,)
    gens = [vec_from_poly({ext(e): c for e, c in g.items()}) for g in I.generators if g]
    tf = {tuple(e) + (1,): -c for e, c in f.items()}
    tf[(0,) * (n + 1)] = ONE
    gens.append(vec_from_poly(tf))
    gb = groebner(gens, order)
    out = []
    for g in gb:
        p = poly_from_vec(g)
        if all(e[-1] == 0 for e in p):
            out.append({e[:-1]: c for e, c in p.items()})
    J = GradedIdeal(I.ring, [poly_from_vec(normalize(vec_from_poly(p), I.ring.order)) for p in out])
    return J


def lattice_basis_ideal(ctx: RingContext) -> GradedIdeal:
    gens = []
    for u in la.lattice_kernel(ctx.matrix.to_rows()).vectors:
        mu = tuple(max(x, 0) for x in u)
        nu = tuple(max(-x, 0) for x in u)
        gens.append(binomial(mu, nu))
    return GradedIdeal(ctx, gens)


def toric_ideal(ctx: RingContext) -> GradedIdeal:
    """I_A: lattice basis binomials saturated by the product of all variables.

    Generators returned are the reduced Groebner basis (content stripped),
    each a homogeneous binomial.
    """
    L = lattice_basis_ideal(ctx)
    if not L.generators:
        return GradedIdeal(ctx, [], [])
    J = saturate(L, monomial((1,) * ctx.n))
    gb = buchberger(J)
    gens = [poly_from_vec(normalize(vec_from_poly(g), ctx.order)) for g in gb]
    return GradedIdeal(ctx, gens, gb)


def variable(ctx_n: int, j: int) -> Poly:
    return monomial(tuple(int(i == j) for i in range(ctx_n)))


def face_ideal(ctx: RingContext, F: cg.Face, toric: Optional[GradedIdeal] = None) -> GradedIdeal:
    """I_F = I_A^F + <d_j : a_j not in F>."""
    n = ctx.n
    cols = F.columns
    gens = [variable(n, j) for j in range(n) if j not in cols]
    if len(cols) == n:
        T = toric or toric_ideal(ctx)
        return GradedIdeal(ctx, list(T.generators), T._gb)
    if len(cols) >= 2:
        sub = [[row[j] for j in cols] for row in ctx.matrix.matrix]
        for u in _sub_toric_generators(sub):
            e_mu = [0] * n
            e_nu = [0] * n
            for j, x in zip(cols, u):
                if x > 0:
                    e_mu[j] = x
                else:
                    e_nu[j] = -x
            gens.append(binomial(e_mu, e_nu))
    return GradedIdeal(ctx, gens)


def _sub_toric_generators(sub: List[List[int]]) -> List[Tuple[int, ...]]:
    """Exponent differences mu - nu of toric generators for a column submatrix."""
    r = la.rank(sub)
    # pick r independent integer rows spanning the same row space
    sub_rows = []
    for row in sub:
        if la.rank(sub_rows + [row]) > len(sub_rows):
            sub_rows.append(row)
        if len(sub_rows) == r:
            break
    P = cg.make_pointed_matrix(sub_rows)
    T = toric_ideal(make_ring(P))
    out = []
    for g in T.generators:
        (e1, _), (e2, _) = sorted(g.items(), key=lambda kv: -kv[1])
        out.append(tuple(a - b for a, b in zip(e1, e2)))
    return out


def maximal_ideal(ctx: RingContext) -> GradedIdeal:
    return GradedIdeal(ctx, [variable(ctx.n, j) for j in range(ctx.n)])


def total_degree_form(f: Poly) -> Poly:
    if not f:
        return f
    top = max(sum(e) for e in f)
    return {e: c for e, c in f.items() if sum(e) == top}


def initial_ideal_total_degree(I: GradedIdeal) -> GradedIdeal:
    """Ideal of top total-degree forms, in variables xi_j (same exponent layout).

    Uses a Groebner basis under degrevlex, which refines total degree, so the
    top forms of its elements generate the initial ideal.
    """
    order = TermOrder(I.ring.n)
    gb = groebner([vec_from_poly(f) for f in I.generators if f], order)
    forms = [total_degree_form(poly_from_vec(g)) for g in gb]
    return GradedIdeal(I.ring, [poly_from_vec(normalize(vec_from_poly(f), order)) for f in forms])


def standard_monomials(gb: Sequence[Poly], order: TermOrder, nvars: int):
    """Standard monomials of a zero-dimensional ideal, or None if infinitely many."""
    leads = [lead(vec_from_poly(g), order)[1] for g in gb]
    bounds = []
    for j in range(nvars):
        pure = [e[j] for e in leads if all(x == 0 for i, x in enumerate(e) if i != j) and e[j] > 0]
        if not pure:
            return None
        bounds.append(min(pure))
    out = []
    for e in itertools.product(*(range(b) for b in bounds)):
        if not any(divides(l, e) for l in leads):
            out.append(e)
    return out


def format_poly(f: Poly, var: str = "d") -> str:
    if not f:
        return "0"
    parts = []
    for e, c in sorted(f.items(), key=lambda kv: TermOrder(len(kv[0])).key(kv[0]), reverse=True):
        mono = "*".join(f"{var}{j + 1}" + (f"^{x}" if x > 1 else "") for j, x in enumerate(e) if x)
        coeff = str(abs(c))
        sign = "-" if c < 0 else "+"
        if mono:
            body = mono if abs(c) == 1 else f"{coeff}*{mono}"
        else:
            body = coeff
        parts.append((sign, body))
    s = ("-" if parts[0][0] == "-" else "") + parts[0][1]
    for sign, body in parts[1:]:
        s += f" {sign} {body}"
    return s


def hilbert_numerator(leads: Sequence[Exp]) -> List[int]:
    """Numerator K(t) of the standard-graded Hilbert series of R / <leads>.

    The series is K(t) / (1 - t)^n; coefficients are returned lowest degree
    first.  Uses K(M + <m>) = K(M) - t^deg(m) K(M : m).
    """
    gens = _minimal_monomials(leads)
    if not gens:
        return [1]
    m, rest = gens[-1], gens[:-1]
    base = hilbert_numerator(rest)
    quot = [tuple(max(x - y, 0) for x, y in zip(g, m)) for g in rest]
    sub = hilbert_numerator(quot)
    shift = sum(m)
    out = base + [0] * max(0, shift + len(sub) - len(base))
    for i, c in enumerate(sub):
        out[i + shift] -= c
    while len(out) > 1 and out[-1] == 0:
        out.pop()
    return out


def _minimal_monomials(gens: Sequence[Exp]) -> List[Exp]:
    gens = sorted(set(tuple(g) for g in gens), key=lambda e: (sum(e), e))
    out: List[Exp] = []
    for g in gens:
        if not any(divides(h, g) for h in out):
            out.append(g)
    return out
