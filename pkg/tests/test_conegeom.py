import itertools

import pytest
from hypothesis import given, settings, strategies as st

from gkzjump import conegeom as cg

A0134 = [[1, 1, 1, 1], [0, 1, 3, 4]]


def test_not_full_rank():
    with pytest.raises(cg.NotFullRank):
        cg.make_pointed_matrix([[1, 2], [2, 4]])


def test_not_pointed_with_witness():
    with pytest.raises(cg.NotPointed) as err:
        cg.make_pointed_matrix([[1, -1]])
    w = err.value.witness
    assert w is not None and any(w) and all(x >= 0 for x in w)
    assert w[0] - w[1] == 0


def test_zero_column_is_not_pointed():
    with pytest.raises(cg.NotPointed):
        cg.make_pointed_matrix([[1, 0, 0], [0, 1, 0]])


def test_certificate_is_positive():
    A = cg.make_pointed_matrix(A0134)
    assert A.check_certificate()


def test_faces_0134():
    A = cg.make_pointed_matrix(A0134)
    L = cg.face_lattice(A)
    assert [F.columns for F in L.faces] == [(), (0,), (3,), (0, 1, 2, 3)]
    assert [F.dim for F in L.faces] == [0, 1, 1, 2]
    assert all(cg.verify_face(A, F) for F in L.faces)
    assert L.empty.columns == () and L.full.columns == (0, 1, 2, 3)


def test_faces_one_dimensional():
    A = cg.make_pointed_matrix([[2, 3]])
    assert [F.columns for F in cg.face_lattice(A).faces] == [(), (0, 1)]


def test_faces_simplicial_cube_corner():
    A = cg.make_pointed_matrix([[1, 0, 0], [0, 1, 0], [0, 0, 1]])
    L = cg.face_lattice(A)
    assert len(L.faces) == 8


def test_normalized_volume_examples():
    assert cg.normalized_volume(cg.make_pointed_matrix([[1, 0], [0, 1]])) == 1
    A = cg.make_pointed_matrix(A0134)
    assert cg.normalized_volume(A, "lex") == cg.normalized_volume(A, "reverse") == 4
    assert cg.normalized_volume(cg.make_pointed_matrix([[1, 1, 1], [0, 1, 2]])) == 2


def test_semigroup_member_examples():
    A = cg.make_pointed_matrix(A0134)
    assert cg.semigroup_member(A, (2, 2)) == (True, (0, 2, 0, 0))
    assert cg.semigroup_member(A, (1, 2)) == (False, None)


def test_fiber_counts_match_enumeration():
    A = cg.make_pointed_matrix(A0134)
    # (1,0,0,1) maps to (2,4), so the fiber of (2,2) is a single point
    assert cg.semigroup_fiber(A, (2, 2)) == [(0, 2, 0, 0)]
    assert cg.semigroup_fiber(A, (2, 4)) == [(1, 0, 0, 1), (0, 1, 1, 0)]


matrices = st.integers(1, 3).flatmap(
    lambda d: st.integers(d, 4).flatmap(
        lambda n: st.lists(st.lists(st.integers(0, 3), min_size=n, max_size=n), min_size=d, max_size=d)))


@settings(max_examples=60, deadline=None)
@given(matrices, st.data())
def test_fiber_matches_brute_force(M, data):
    try:
        A = cg.make_pointed_matrix(M)
    except (cg.NotPointed, cg.NotFullRank):
        return
    v = tuple(data.draw(st.integers(0, 5)) for _ in range(A.d))
    h = cg._int_certificate(A)
    cap = sum(a * b for a, b in zip(h, v)) + 1
    brute = sorted((u for u in itertools.product(range(max(cap, 1)), repeat=A.n) if A.apply(u) == v),
                   reverse=True)
    assert cg.semigroup_fiber(A, v) == brute
    assert cg.semigroup_member(A, v)[0] == bool(brute)


def test_localized_member_examples():
    A = cg.make_pointed_matrix(A0134)
    L = cg.face_lattice(A)
    ray = L.by_columns((0,))
    assert not cg.localized_member(A, ray, (0, -1))
    assert cg.localized_member(A, ray, (1, 2))
    assert cg.localized_member(A, ray, (-5, 3))
    assert not cg.localized_member(A, L.empty, (1, 2))
    assert cg.localized_member(A, L.full, (1, 2))


def test_localized_member_uses_group_generated_by_face():
    # face {1} of [[2,0],[0,1]] spans 2Z x 0, not Z x 0
    A = cg.make_pointed_matrix([[2, 0], [0, 1]])
    F = cg.face_lattice(A).by_columns((0,))
    assert cg.localized_member(A, F, (-2, 0))
    assert not cg.localized_member(A, F, (-1, 0))


def test_lattice_index():
    assert cg.lattice_index(cg.make_pointed_matrix(A0134)) == 1
    assert cg.lattice_index(cg.make_pointed_matrix([[2, 2, 2], [0, 1, 2]])) == 2
