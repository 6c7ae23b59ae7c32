import itertools
import random
from fractions import Fraction
from math import comb

import pytest

from gkzjump import conegeom as cg
from gkzjump import gmod as gm
from gkzjump import gring as gr
from gkzjump import intlinalg as la

ONE = Fraction(1)


def evaluate(m, point):
    """Numeric matrix of a graded matrix at a point (rows = target)."""
    out = [[Fraction(0)] * len(m.source) for _ in m.target]
    for k, col in enumerate(m.columns):
        for (i, e), c in col.items():
            val = c
            for power, coord in zip(e, point):
                val *= coord ** power
            out[i][k] += val
    return out


def random_point(n, seed=0):
    rng = random.Random(seed)
    return [Fraction(rng.randint(2, 40), rng.randint(1, 7)) for _ in range(n)]


def test_syzygies_of_nonzerodivisor_vanish(ring_0134):
    ctx = ring_0134
    x = gr.variable(4, 0)
    m = gm.GradedMatrix(ctx, [(0, 0)], [ctx.degree((1, 0, 0, 0))], [gr.vec_from_poly(x)])
    assert gm.syzygies(m).columns == []


def test_koszul_pair_syzygy(ring_identity):
    ctx = ring_identity
    x, y = gr.variable(2, 0), gr.variable(2, 1)
    m = gm.GradedMatrix(ctx, [(0, 0)], [(-1, 0), (0, -1)], [gr.vec_from_poly(x), gr.vec_from_poly(y)])
    S = gm.syzygies(m)
    assert len(S.columns) == 1
    col = S.columns[0]
    assert set(col) == {(0, (0, 1)), (1, (1, 0))}
    assert col[(0, (0, 1))] == -col[(1, (1, 0))]
    assert S.source == [(-1, -1)]
    assert m.compose(S).is_zero()


def test_syzygies_of_toric_presentation_random_point(ring_0134):
    ctx = ring_0134
    P = gm.prune(gm.toric_data(ctx).semigroup_ring())
    m = P.relations
    S = gm.syzygies(m)
    assert S.is_homogeneous() and m.compose(S).is_zero()
    for seed in range(3):
        pt = random_point(4, seed)
        r1 = la.rank(evaluate(m, pt))
        r2 = la.rank(evaluate(S, pt))
        assert r1 + r2 == len(m.source)


def test_resolution_of_free_module(ring_0134):
    res = gm.minimal_free_resolution(gm.GradedPresentation.free(ring_0134, [(0, 0)]))
    assert res.length == 0 and res.ranks() == [1]


@pytest.mark.parametrize("M", [[[1, 0], [0, 1]], [[1, 1, 1], [0, 1, 2]], [[1, 1, 1, 1], [0, 1, 3, 4]]])
def test_koszul_resolution(M):
    ctx = gr.make_ring(M)
    K = gm.GradedPresentation.cyclic(gr.maximal_ideal(ctx))
    res = gm.minimal_free_resolution(K)
    n = ctx.n
    assert res.ranks() == [comb(n, k) for k in range(n + 1)]
    assert res.check_complex()
    assert not any(m.has_unit_entry() for m in res.maps)


def test_toric_resolution_0134_and_permuted_variables():
    res = gm.minimal_free_resolution(gm.toric_data(gr.make_ring([[1, 1, 1, 1], [0, 1, 3, 4]])).semigroup_ring())
    assert res.length == 3 and res.ranks() == [1, 4, 4, 1]
    assert res.check_complex() and not any(m.has_unit_entry() for m in res.maps)
    perm = gr.make_ring([[1, 1, 1, 1], [4, 0, 3, 1]])
    res2 = gm.minimal_free_resolution(gm.toric_data(perm).semigroup_ring())
    assert res2.ranks() == res.ranks()
    deg = lambda r: sorted(sorted(F.shifts) for F in r.modules)
    assert deg(res2) == deg(res)


def test_ext_of_free_module(ring_0134):
    R = gm.GradedPresentation.free(ring_0134, [(0, 0)])
    assert gm.ext_module(R, 0).relations.target == [(0, 0)]
    assert gm.ext_module(R, 0).relations.columns == []
    for j in (1, 2):
        assert gm.ext_module(R, j).is_zero()


def test_ext_of_residue_field_is_shifted_by_column_sum():
    ctx = gr.make_ring([[1, 0], [0, 1]])
    k = gm.GradedPresentation.cyclic(gr.maximal_ideal(ctx))
    res = gm.minimal_free_resolution(k)
    assert gm.ext_module(k, 0, res).is_zero() and gm.ext_module(k, 1, res).is_zero()
    top = gm.ext_module(k, 2, res)
    assert top.relations.target == [ctx.epsilon]
    assert gm.hilbert_function(top, ctx.epsilon) == 1
    assert gm.hilbert_function(top, (0, 0)) == 0


def test_ext3_of_0134_is_finite_length(ring_0134):
    S = gm.toric_data(ring_0134).semigroup_ring()
    res = gm.minimal_free_resolution(S)
    E = gm.ext_module(S, 3, res)
    support = [a for a in itertools.product(range(-2, 12), range(-2, 16)) if gm.hilbert_function(E, a)]
    assert support == [(5, 10)]
    for a in [(5, 10), (4, 8), (3, 6)]:
        assert gm.cohomology_dimension(res, 3, a) == gm.hilbert_function(E, a)
    assert gm.ext_module(S, 4, res).is_zero()


def test_ext_dimensions_agree_with_complex_strands(ring_0134):
    S = gm.toric_data(ring_0134).semigroup_ring()
    res = gm.minimal_free_resolution(S)
    E = gm.ext_module(S, 2, res)
    for a in itertools.product(range(0, 7), range(0, 14)):
        assert gm.cohomology_dimension(res, 2, a) == gm.hilbert_function(E, a)


def test_cohen_macaulay_vanishing_for_unimodular():
    ctx = gr.make_ring([[1, 1, 1, 1], [0, 1, 0, 1], [0, 0, 1, 1]])
    S = gm.toric_data(ctx).semigroup_ring()
    res = gm.minimal_free_resolution(S)
    assert res.length == ctx.n - ctx.d
    for j in range(ctx.n - ctx.d + 1, ctx.n + 1):
        assert gm.ext_module(S, j, res).is_zero()


def test_hilbert_function_examples(ring_0134):
    S = gm.toric_data(ring_0134).semigroup_ring()
    assert gm.hilbert_function(S, (-2, -2)) == 1
    assert gm.hilbert_function(S, (-1, -2)) == 0
    assert gm.hilbert_function(S, (3, 3)) == 0
    R = gm.GradedPresentation.free(ring_0134, [(0, 0)])
    assert gm.hilbert_function(R, (-2, -2)) == 1
    assert gm.hilbert_function(R, (-2, -4)) == 2
    for a in itertools.product(range(-6, 1), range(-20, 1)):
        assert gm.hilbert_function(S, a) == int(cg.semigroup_member(ring_0134.matrix, tuple(-x for x in a))[0])


def test_filtration_of_face_ring(ring_0134):
    td = gm.toric_data(ring_0134)
    ray = td.face((3,))
    M = td.face_ring(ray, (2, 5))
    filt = gm.toric_filtration(M)
    assert [(F.columns, s) for F, s in filt.steps] == [((3,), (2, 5))]


def test_filtration_of_residue_field(ring_0134):
    k = gm.GradedPresentation.cyclic(gr.maximal_ideal(ring_0134))
    filt = gm.toric_filtration(k)
    assert [(F.columns, s) for F, s in filt.steps] == [((), (0, 0))]


def test_filtration_of_ext3_uses_empty_face(ring_0134):
    S = gm.toric_data(ring_0134).semigroup_ring()
    E = gm.ext_module(S, 3)
    filt = gm.toric_filtration(E)
    assert all(F.columns == () for F, _ in filt.steps)
    assert sorted(s for _, s in filt.steps) == [(5, 10)]


def test_filtration_additivity_and_order_independence():
    ctx = gr.make_ring([[1, 1, 1, 1, 1], [4, 0, 3, 2, 0], [0, 2, 0, 4, 0]])
    data = gm.toric_data(ctx)
    S = data.semigroup_ring()
    res = gm.minimal_free_resolution(S)
    E = gm.ext_module(S, 2, res)
    f1 = gm.toric_filtration(E, "forward")
    f2 = gm.toric_filtration(E, "reverse")
    assert gm.quasidegrees(E, f1) == gm.quasidegrees(E, f2)
    rng = random.Random(5)
    gens = E.relations.target
    pts = list(gens) + [tuple(rng.randint(min(g[i] for g in gens) - 2, max(g[i] for g in gens) + 2)
                              for i in range(3)) for _ in range(20)]
    for p in pts:
        h = gm.hilbert_function(E, p)
        assert h == f1.hilbert_function(ctx.matrix, p) == f2.hilbert_function(ctx.matrix, p)


def test_not_toric_is_raised():
    # <d1 + 2 d2> is graded over [[1, 1]] and prime, but not a face ideal
    ctx = gr.make_ring([[1, 1]])
    I = gr.GradedIdeal(ctx, [gr.poly_add(gr.variable(2, 0), gr.variable(2, 1), Fraction(2))])
    with pytest.raises(gm.NotToric):
        gm.toric_filtration(gm.GradedPresentation.cyclic(I))


def test_quasidegrees_examples(ring_0134):
    td = gm.toric_data(ring_0134)
    q = gm.quasidegrees(td.semigroup_ring())
    assert [(s, F.columns) for s, F in q.strata] == [((0, 0), (0, 1, 2, 3))]
    k = gm.GradedPresentation.cyclic(gr.maximal_ideal(ring_0134))
    assert [(s, F.columns) for s, F in gm.quasidegrees(k).strata] == [((0, 0), ())]
    shifted = gm.GradedPresentation.cyclic(gr.maximal_ideal(ring_0134), (3, -1))
    q = gm.quasidegrees(shifted)
    assert [(s, F.columns) for s, F in q.strata] == [((3, -1), ())]
    # the only true degree of the shifted residue field is the generator degree
    assert [a for a in itertools.product(range(-4, 5), repeat=2) if gm.hilbert_function(shifted, a)] == [(3, -1)]


def test_quasidegree_canonical_form(ring_0134):
    td = gm.toric_data(ring_0134)
    A = ring_0134.matrix
    Q = gm.QuasiDegreeSet(A)
    ray = td.face((0,))
    Q.add((1, 2), td.face(()))
    Q.add((0, 2), ray)
    Q.add((3, 2), ray)   # same line as (0, 2) + C(1, 0)
    Q.add((5, 7), td.face((0, 1, 2, 3)))
    assert len(Q) == 1 and Q.strata[0][1].columns == (0, 1, 2, 3)
    Q2 = gm.QuasiDegreeSet(A)
    Q2.add((0, 2), ray)
    Q2.add((3, 2), ray)
    Q2.add((7, 2), td.face(()))
    assert len(Q2) == 1 and Q2.contains((100, 2)) and not Q2.contains((0, 3))


def test_presentation_homogeneity(ring_0134):
    P = gm.toric_data(ring_0134).semigroup_ring()
    assert P.relations.is_homogeneous()
    T = P.relations.transpose()
    assert T.is_homogeneous()
