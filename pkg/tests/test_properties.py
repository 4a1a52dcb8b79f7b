"""Randomised invariants (hypothesis)."""

import itertools

import numpy as np
from hypothesis import HealthCheck, assume, given, settings
from hypothesis import strategies as st

from toricpoly.errors import DimensionError
from toricpoly.gf import field_make, rank
from toricpoly.lattice import (
    AffineUnimodularMap,
    apply_map,
    boundary_count,
    convex_hull,
    interior_points,
    is_equivalent,
    normal_form,
    normalized_volume,
    point_count,
    width_along,
)
from toricpoly.ldp import dual_polygon, gorenstein_index, minimum_box, short_directions
from toricpoly.mindist import bz_min_distance, exact_min_distance, row_combo_bound
from toricpoly.toric import GeneratorMatrix, generator_matrix

SETTINGS = settings(max_examples=60, deadline=None, suppress_health_check=[HealthCheck.filter_too_much])

coord = st.integers(-4, 4)


@st.composite
def polygons(draw, lo=-4, hi=4):
    pts = draw(st.lists(st.tuples(st.integers(lo, hi), st.integers(lo, hi)), min_size=3, max_size=9))
    try:
        return convex_hull(pts)
    except DimensionError:
        assume(False)


@st.composite
def unimodular(draw):
    # products of elementary matrices, then a translation
    M = np.eye(2, dtype=int)
    for kind, t in draw(st.lists(st.tuples(st.integers(0, 3), st.integers(-2, 2)), max_size=4)):
        E = [np.array([[1, t], [0, 1]]), np.array([[1, 0], [t, 1]]),
             np.array([[0, 1], [1, 0]]), np.array([[-1, 0], [0, 1]])][kind]
        M = E @ M
    t = (draw(coord), draw(coord))
    return AffineUnimodularMap(tuple(tuple(int(x) for x in r) for r in M), t)


@SETTINGS
@given(polygons(), unimodular())
def test_invariants_under_maps(P, phi):
    Q = apply_map(P, phi)
    assert normalized_volume(Q) == normalized_volume(P)
    assert len(Q.vertices) == len(P.vertices)
    assert point_count(Q) == point_count(P)
    assert normal_form(Q) == normal_form(P)
    assert is_equivalent(P, Q)


@SETTINGS
@given(polygons())
def test_pick(P):
    assert normalized_volume(P) == 2 * len(interior_points(P)) + boundary_count(P) - 2


@SETTINGS
@given(polygons(), unimodular(), polygons())
def test_equivalence_relation(P, phi, R):
    Q = apply_map(P, phi)
    assert is_equivalent(P, P)
    assert is_equivalent(Q, P)
    if is_equivalent(P, R):
        assert is_equivalent(Q, R)
    else:
        assert not is_equivalent(R, Q)


@SETTINGS
@given(polygons(), unimodular(), st.tuples(coord, coord).filter(lambda u: u != (0, 0)))
def test_dual_action_on_widths(P, phi, u):
    lin = AffineUnimodularMap(phi.matrix)
    assert width_along(apply_map(P, lin), u) == width_along(P, lin.dual_action(u))


@SETTINGS
@given(polygons(), unimodular())
def test_minimum_box_invariant(P, phi):
    res = minimum_box(P)
    assert minimum_box(apply_map(P, phi)).m == res.m
    for _, E in res.embeddings:
        assert width_along(E, (1, 0)) <= res.m and width_along(E, (0, 1)) <= res.m
        assert is_equivalent(E, P)


def _brute_min_box(P):
    """Search all matrices with entries up to 2(w1 + w2) for the best pair."""
    w1, w2 = width_along(P, (1, 0)), width_along(P, (0, 1))
    B = 2 * (w1 + w2)
    best = max(w1, w2)
    rows = [(a, b) for a in range(-B, B + 1) for b in range(-B, B + 1) if (a, b) != (0, 0)]
    widths = {u: width_along(P, u) for u in rows}
    for u, v in itertools.combinations(rows, 2):
        if u[0] * v[1] - u[1] * v[0] in (1, -1):
            best = min(best, max(widths[u], widths[v]))
    return best


@settings(max_examples=15, deadline=None)
@given(polygons(lo=-2, hi=2))
def test_minimum_box_matches_brute_force(P):
    assert minimum_box(P).m == _brute_min_box(P)


@SETTINGS
@given(polygons(), st.integers(1, 6))
def test_disc_criterion_sound(P, W):
    found = {u for _, u in short_directions(P, W)}
    for a in range(0, 9):
        for b in range(-8, 9):
            if (a == 0 and b <= 0) or np.gcd(a, b) != 1 or (a, b) in found:
                continue
            assert width_along(P, (a, b)) > W


@SETTINGS
@given(polygons())
def test_index_is_minimal_dilation(P):
    c = interior_points(P)
    assume(c)
    P0 = apply_map(P, AffineUnimodularMap.translation_by((-c[0][0], -c[0][1])))
    ell = gorenstein_index(P0)
    D = dual_polygon(P0)
    assert ell >= 1 and D.scaled(ell).is_lattice()
    if ell > 1:
        assert not D.scaled(ell - 1).is_lattice()


@settings(max_examples=30, deadline=None)
@given(st.sampled_from([2, 3, 4, 5]), st.data())
def test_distance_routes_agree(q, data):
    k = data.draw(st.integers(1, 6))
    n = data.draw(st.integers(k, 10))
    F = field_make(q)
    rows = np.array(data.draw(st.lists(st.lists(st.integers(0, q - 1), min_size=n, max_size=n),
                                       min_size=k, max_size=k)), dtype=np.int16)
    assume(rank(F, rows) == k)
    G = GeneratorMatrix(F, rows)
    ex = exact_min_distance(G)
    bz = bz_min_distance(G)
    assert ex.value == bz.value
    assert ex.verify(G) and bz.verify(G)
    prev = n + 1
    for r in range(1, k + 1):
        b = row_combo_bound(G, r)
        assert ex.value <= b.value <= prev
        assert b.verify(G)
        prev = b.value
    assert prev == ex.value


@settings(max_examples=25, deadline=None)
@given(polygons(lo=0, hi=3), st.sampled_from([5, 7]))
def test_code_dimension_and_characters(P, q):
    F = field_make(q)
    G = generator_matrix(P, F)
    assert G.n == (q - 1) ** 2
    assert G.k == point_count(P) == G.rank()
    labels = set(G.row_labels)
    for u in G.row_labels:
        for v in G.row_labels:
            s = (u[0] + v[0], u[1] + v[1])
            if s in labels:
                assert np.array_equal(F.mul_table[G.row(u), G.row(v)], G.row(s))
