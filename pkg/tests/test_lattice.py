import random

import pytest

from toricpoly.errors import DimensionError, ZeroVectorError
from toricpoly.lattice import (
    AffineUnimodularMap,
    LatticePolygon,
    apply_map,
    boundary_count,
    bounding_square_size,
    canonical_representative,
    contains,
    convex_hull,
    from_normal_form,
    interior_points,
    invariants,
    is_equivalent,
    lattice_points,
    normal_form,
    normalized_volume,
    point_count,
    primitive,
    random_unimodular,
    translate_to_origin,
    width_along,
)

PENTAGON = convex_hull([(-1, 2), (1, 2), (1, 0), (-1, -1), (-2, -1)])
TRIANGLE = convex_hull([(0, 0), (1, 0), (0, 1)])
SQUARE = convex_hull([(0, 0), (1, 0), (0, 1), (1, 1)])


def square(m):
    return convex_hull([(0, 0), (m, 0), (0, m), (m, m)])


def test_hull_drops_edge_points():
    P = convex_hull([(0, 0), (2, 0), (0, 2), (1, 1)])
    assert set(P.vertices) == {(0, 0), (2, 0), (0, 2)}


def test_hull_square_and_orientation():
    assert len(SQUARE.vertices) == 4
    assert SQUARE.vertices[0] == (0, 0)
    # counter-clockwise
    assert SQUARE.vertices == ((0, 0), (1, 0), (1, 1), (0, 1))


def test_hull_collinear_raises():
    with pytest.raises(DimensionError):
        convex_hull([(0, 0), (3, 0), (6, 0)])
    with pytest.raises(DimensionError):
        convex_hull([(1, 1)])


def test_constructor_rejects_non_convex():
    with pytest.raises(ValueError):
        LatticePolygon(((0, 0), (2, 0), (1, 1), (2, 2), (0, 2)))


def test_lattice_point_counts():
    assert point_count(SQUARE) == 4
    assert point_count(convex_hull([(0, 0), (2, 0), (0, 2)])) == 6
    assert len(lattice_points(PENTAGON)) == point_count(PENTAGON) == 11
    assert interior_points(PENTAGON) == [(-1, 0), (-1, 1), (0, 0), (0, 1)]


def test_normalized_volumes():
    assert normalized_volume(SQUARE) == 2
    assert normalized_volume(TRIANGLE) == 1
    assert normalized_volume(PENTAGON) == 13


def test_widths():
    assert width_along(square(3), (1, 0)) == 3
    assert width_along(square(3), (1, 1)) == 6
    assert width_along(PENTAGON, (1, 0)) == 3
    with pytest.raises(ZeroVectorError):
        width_along(PENTAGON, (0, 0))


def test_bounding_square():
    assert bounding_square_size(SQUARE) == 1
    assert bounding_square_size(PENTAGON) == 3
    assert bounding_square_size(convex_hull([(0, 0), (7, 0), (0, 7)])) == 7


def test_translate_to_origin():
    P = translate_to_origin(PENTAGON)
    assert min(x for x, _ in P.vertices) == 0
    assert min(y for _, y in P.vertices) == 0


def test_identity_and_shear():
    assert apply_map(PENTAGON, AffineUnimodularMap.identity()) == PENTAGON
    shear = AffineUnimodularMap(((1, 1), (0, 1)))
    assert apply_map(TRIANGLE, shear) == convex_hull([(0, 0), (1, 0), (1, 1)])


def test_map_rejects_non_unimodular():
    with pytest.raises(ValueError):
        AffineUnimodularMap(((2, 0), (0, 1)))


def test_map_algebra():
    rng = random.Random(3)
    for _ in range(50):
        f = random_unimodular(rng)
        g = random_unimodular(rng)
        p = (rng.randint(-9, 9), rng.randint(-9, 9))
        assert f.compose(g)(p) == f(g(p))
        assert f.inverse()(f(p)) == p


def test_normal_form_examples():
    assert normal_form(PENTAGON) == normal_form(apply_map(PENTAGON, AffineUnimodularMap.translation_by((5, 7))))
    sheared = convex_hull([(0, 0), (1, 0), (1, 1)])
    assert normal_form(TRIANGLE) == normal_form(sheared)
    assert normal_form(SQUARE) != normal_form(TRIANGLE)


def test_normal_form_round_trip():
    key = normal_form(PENTAGON)
    Q = from_normal_form(key)
    assert is_equivalent(Q, PENTAGON)
    assert normal_form(Q) == key
    assert canonical_representative(PENTAGON) == Q


def test_is_equivalent_examples():
    rng = random.Random(0)
    assert is_equivalent(PENTAGON, apply_map(PENTAGON, random_unimodular(rng)))
    assert not is_equivalent(SQUARE, TRIANGLE)


def test_same_invariants_different_class():
    A = convex_hull([(0, 0), (1, 0), (2, 1), (1, 2)])
    B = convex_hull([(0, 1), (1, 0), (2, 1), (1, 2)])
    assert invariants(A) == invariants(B)
    assert not is_equivalent(A, B)
    assert is_equivalent(convex_hull([(0, 0), (2, 0), (0, 1)]), convex_hull([(0, 0), (2, 0), (1, 1)]))


def test_contains_and_primitive():
    assert contains(PENTAGON, (0, 0))
    assert contains(PENTAGON, (1, 2))
    assert not contains(PENTAGON, (2, 2))
    assert primitive((4, -6)) == (2, -3)
    assert boundary_count(PENTAGON) == 7
