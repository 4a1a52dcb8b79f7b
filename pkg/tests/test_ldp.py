import math
import random
from fractions import Fraction

import pytest

from toricpoly.classify import box
from toricpoly.errors import BoxTooSmallError, OriginNotInteriorError
from toricpoly.lattice import (
    AffineUnimodularMap,
    apply_map,
    bounding_square_size,
    convex_hull,
    random_unimodular,
    width_along,
)
from toricpoly.ldp import (
    RationalPolygon,
    all_embeddings,
    dual_polygon,
    fits_in_box,
    gorenstein_index,
    is_ldp,
    ldp_origins,
    minimum_box,
    short_directions,
)

P2 = convex_hull([(1, 0), (0, 1), (-1, -1)])
PENTAGON = convex_hull([(-1, 2), (1, 2), (1, 0), (-1, -1), (-2, -1)])


def test_is_ldp_examples():
    assert is_ldp(P2)
    assert is_ldp(PENTAGON)
    assert not is_ldp(box(1))
    doubled = convex_hull([(2, 0), (0, 2), (-2, -2)])
    assert not is_ldp(doubled)


def test_dual_of_projective_plane():
    assert dual_polygon(P2) == RationalPolygon.from_points([(-1, -1), (2, -1), (-1, 2)])
    assert gorenstein_index(P2) == 1


def test_index_ten_pentagon():
    D = dual_polygon(PENTAGON)
    assert len(D.vertices) == 5
    assert not D.is_lattice()
    assert D.scaled(10).is_lattice()
    assert not any(D.scaled(l).is_lattice() for l in range(1, 10))
    assert gorenstein_index(PENTAGON) == 10


def test_dual_needs_interior_origin():
    with pytest.raises(OriginNotInteriorError):
        dual_polygon(box(1))


def test_dual_vertices_satisfy_constraints():
    D = dual_polygon(PENTAGON)
    for v in D.vertices:
        vals = [v[0] * x + v[1] * y for x, y in PENTAGON.vertices]
        assert min(vals) == Fraction(-1)


def test_minimum_box_examples():
    assert minimum_box(box(5)).m == 5
    assert minimum_box(PENTAGON).m == 3
    assert not fits_in_box(PENTAGON, 2)
    rng = random.Random(1)
    for _ in range(20):
        disguised = apply_map(box(4), random_unimodular(rng))
        res = minimum_box(disguised)
        assert res.m == 4
        assert bounding_square_size(res.polygon) == 4


def test_embeddings():
    embs = all_embeddings(box(3), 3)
    assert embs == [box(3)]
    for E in all_embeddings(PENTAGON, 3):
        assert width_along(E, (1, 0)) <= 3 and width_along(E, (0, 1)) <= 3
        assert min(x for x, _ in E.vertices) == 0 and min(y for _, y in E.vertices) == 0
    tri = convex_hull([(0, 0), (1, 0), (0, 1)])
    sizes = {bounding_square_size(E) for E in all_embeddings(tri, 2)}
    assert sizes == {1, 2}
    with pytest.raises(BoxTooSmallError):
        all_embeddings(PENTAGON, 2)


def test_short_directions_sound():
    # every direction left out really is wider than the bound
    P = apply_map(PENTAGON, AffineUnimodularMap(((2, 1), (1, 1)), (3, -4)))
    W = 4
    found = {u for _, u in short_directions(P, W)}
    for a in range(0, 15):
        for b in range(-15, 16):
            if (a == 0 and b <= 0) or math.gcd(a, b) != 1:
                continue
            if (a, b) not in found:
                assert width_along(P, (a, b)) > W


def test_ldp_origins():
    T = apply_map(PENTAGON, AffineUnimodularMap.translation_by((2, 1)))
    assert (2, 1) in ldp_origins(T)
