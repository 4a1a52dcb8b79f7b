import pytest

from toricpoly.classify import (
    ClassificationRun,
    box,
    box_stats,
    classify_box,
    exact_box_classes,
    is_homogeneous,
    max_vertex_survey,
    shave,
)
from toricpoly.errors import DimensionError
from toricpoly.lattice import (
    convex_hull,
    format_polygon,
    interior_points,
    boundary_count,
    normal_form,
    normalized_volume,
)


@pytest.fixture(scope="module")
def b3():
    return classify_box(3)


def test_shave_examples():
    assert shave(box(1), (1, 1)) == convex_hull([(0, 0), (1, 0), (0, 1)])
    tri = convex_hull([(0, 0), (1, 0), (0, 1)])
    for v in tri.vertices:
        with pytest.raises(DimensionError):
            shave(tri, v)
    assert shave(box(2), (2, 2)) == convex_hull([(0, 0), (2, 0), (2, 1), (1, 2), (0, 2)])
    with pytest.raises(ValueError):
        shave(box(2), (1, 1))


def test_small_counts():
    assert len(classify_box(1)) == 2
    c2 = classify_box(2)
    assert len(c2) == 17
    assert box_stats(c2, 2).count_exact_m == 15


def test_b3_stats(b3):
    assert len(b3) == 148
    st = box_stats(b3, 3)
    assert (st.count_exact_m, st.max_vertices, st.count_max_vertex) == (131, 8, 1)
    assert st.csv_row() == "3,131,8,1"


def test_monotone_counts(b3):
    keys3 = {normal_form(P) for P in b3}
    keys2 = {normal_form(P) for P in classify_box(2)}
    assert keys2 <= keys3
    assert len(exact_box_classes(b3, 1)) + len(exact_box_classes(b3, 2)) == len(keys2)


def test_volume_bound_and_pick(b3):
    for P in b3:
        v = normalized_volume(P)
        assert 1 <= v <= 2 * 9
        assert v == 2 * len(interior_points(P)) + boundary_count(P) - 2


def test_representatives_fit(b3):
    for P in b3:
        assert all(0 <= x <= 3 and 0 <= y <= 3 for x, y in P.vertices)


def test_closure_under_shaving(b3):
    keys = {normal_form(P) for P in b3}
    for P in b3:
        for v in P.vertices:
            try:
                Q = shave(P, v)
            except DimensionError:
                continue
            assert normal_form(Q) in keys


def test_deterministic_across_workers(tmp_path):
    serial = [format_polygon(P) for P in classify_box(3, workers=1)]
    parallel = [format_polygon(P) for P in classify_box(3, workers=2)]
    spilled = [format_polygon(P) for P in classify_box(3, workers=1, spill_dir=str(tmp_path))]
    assert serial == parallel == spilled


def test_spill_files_removed(tmp_path):
    run = ClassificationRun(2, spill_dir=str(tmp_path)).run()
    assert len(list(run.items())) == 17
    run.cleanup()
    assert list(tmp_path.iterdir()) == []


def test_homogeneity_examples():
    assert is_homogeneous(box(3))
    assert is_homogeneous(convex_hull([(0, 0), (1, 0), (0, 1)]))
    assert not is_homogeneous(convex_hull([(0, 0), (2, 0), (0, 1)]))


def test_max_vertex_survey_m1():
    sv = max_vertex_survey(classify_box(1), 1)
    assert sv.max_vertices == 4
    assert sv.minimal == [(box(1), True)]


def test_unique_least_volume_homogeneous_up_to_m5():
    classes = classify_box(5)
    for m in range(1, 6):
        sv = max_vertex_survey(classes, m)
        assert len(sv.homogeneous) == 1
    assert max_vertex_survey(classes, 5).max_vertices == 10
