from __future__ import annotations

import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from polyuni.embedding import (
    build_rotation_system,
    cube,
    dual,
    face_neighbors,
    is_pyramid,
    mirror,
    octahedron,
    prism,
    pyramid,
    tetrahedron,
    trace_faces,
    validate_polyhedron,
)
from polyuni.errors import (
    AsymmetricAdjacency,
    DegreeTooLow,
    DuplicateNeighbor,
    NotGenusZero,
    NotThreeConnected,
    NotTwoConnected,
    SelfLoop,
)
from polyuni.isomorphism import canonical_code
from polyuni.transforms import t1


def test_face_sizes_of_standard_solids():
    assert sorted(len(f) for f in tetrahedron().faces) == [3] * 4
    assert sorted(len(f) for f in cube().faces) == [4] * 6
    assert sorted(len(f) for f in octahedron().faces) == [3] * 8
    assert sorted(len(f) for f in pyramid(8).faces) == [3] * 8 + [8]
    assert sorted(len(f) for f in prism(8).faces) == [4] * 8 + [8, 8]


def test_k4_rotation_matches_documented_orientation():
    assert tetrahedron().rs.rot == ((1, 2, 3), (0, 3, 2), (0, 1, 3), (0, 2, 1))


def test_every_dart_on_exactly_one_face():
    g = prism(6)
    darts = [d for f in g.faces for d in f.darts]
    assert len(darts) == len(set(darts)) == 2 * g.q


def test_face_across_dart_contains_reverse_dart():
    g = cube()
    for f in g.faces:
        for (a, b), h in zip(f.darts, face_neighbors(g, f)):
            assert (b, a) in h.darts


@pytest.mark.parametrize(
    "lists, exc",
    [
        ([[1, 2, 3], [0, 2], [0, 1, 3], [0, 2, 1]], AsymmetricAdjacency),
        ([[1, 1, 2], [0, 2], [0, 1]], DuplicateNeighbor),
        ([[0, 1, 2], [0, 2], [0, 1]], SelfLoop),
    ],
)
def test_build_rejects_malformed_lists(lists, exc):
    with pytest.raises(exc):
        build_rotation_system(len(lists), lists)


def test_validate_rejects_low_degree():
    rs = build_rotation_system(4, [[1, 3], [0, 2], [1, 3], [2, 0]])
    with pytest.raises(DegreeTooLow):
        validate_polyhedron(rs)


def test_validate_rejects_non_planar_rotation():
    rot = [list(r) for r in tetrahedron().rs.rot]
    rot[0].reverse()
    rs = build_rotation_system(4, rot)
    assert rs.p - rs.q + len(trace_faces(rs)) != 2
    with pytest.raises(NotGenusZero):
        validate_polyhedron(rs)


def test_validate_rejects_cut_vertex_and_two_cut():
    g = pyramid(8)
    apex, base = is_pyramid(g)
    with pytest.raises(NotTwoConnected):
        validate_polyhedron(t1(g, base, 1, 4).rotation)
    h = prism(8)
    top = max(h.faces, key=len)
    with pytest.raises(NotThreeConnected):
        validate_polyhedron(t1(h, top, 0, 4).rotation)


def test_pyramid_detection():
    assert is_pyramid(tetrahedron()) is not None
    for n in range(4, 10):
        apex, base = is_pyramid(pyramid(n))
        assert apex == 0 and len(base) == n
    assert is_pyramid(cube()) is None
    assert is_pyramid(prism(8)) is None


def test_dual_of_cube_is_octahedron():
    assert canonical_code(dual(cube())) == canonical_code(octahedron())
    assert canonical_code(dual(pyramid(7))) == canonical_code(pyramid(7))


def test_dual_involution_on_census(census8):
    for g in census8:
        assert canonical_code(dual(dual(g))) == canonical_code(g)


def test_euler_on_census(census8):
    for g in census8:
        assert g.p - g.q + len(g.faces) == 2


@settings(max_examples=40, deadline=None)
@given(st.integers(3, 9), st.randoms(use_true_random=False))
def test_relabelling_preserves_face_sizes(n, rnd):
    g = prism(n)
    perm = list(range(g.p))
    rnd.shuffle(perm)
    h = validate_polyhedron(g.rs.relabeled(perm))
    assert sorted(map(len, h.faces)) == sorted(map(len, g.faces))


def test_mirror_reverses_faces():
    g = prism(5)
    m = mirror(g)
    assert sorted(f.key for f in m.faces) == sorted(type(f)(f.id, f.boundary[::-1]).key for f in g.faces)


def test_find_face_accepts_any_orientation():
    g = cube()
    f = g.faces[2]
    assert g.find_face(f.boundary[::-1]).id == f.id
    with pytest.raises(KeyError):
        g.find_face((0, 1, 2, 3, 4))


def test_random_polyhedra_validate():
    from oracles import random_polyhedron

    rng = random.Random(3)
    for _ in range(20):
        g = random_polyhedron(rng, rng.randint(5, 14))
        assert g.p - g.q + len(g.faces) == 2
