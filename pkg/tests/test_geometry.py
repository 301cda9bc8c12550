import math

import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

from frechet_xlate.geometry import (
    GeometryError,
    Point,
    Segment,
    circle_circle_intersections,
    circle_segment_params,
    direction,
    free_interval,
    point,
    point_segment_distance,
    segment_intersection,
    solve_quadratic,
)

from oracles import dense_point_segment_distance

coord = st.floats(-10, 10, allow_nan=False)
pts = st.tuples(coord, coord)


def seg(a, b):
    return Segment(Point(*a), Point(*b))


def test_quadratic_examples():
    assert [r.value for r in solve_quadratic(1, 0, -1)] == [-1.0, 1.0]
    roots = solve_quadratic(1, -2, 1)
    assert len(roots) == 1 and roots[0].value == 1.0 and roots[0].mult == 2
    assert solve_quadratic(1, 0, 1) == []


def test_quadratic_all_zero_rejected():
    with pytest.raises(GeometryError):
        solve_quadratic(0, 0, 0)


def test_quadratic_linear_and_cancellation():
    assert solve_quadratic(0, 2, -4)[0].value == 2.0
    # b^2 >> 4ac: the small root must not cancel to zero
    small = [r.value for r in solve_quadratic(1, -1e8, 1)][0]
    assert small == pytest.approx(1e-8, rel=1e-12)


@given(st.floats(-50, 50), st.floats(-50, 50), st.floats(0.1, 10))
def test_quadratic_root_residuals(r1, r2, a):
    b, c = -a * (r1 + r2), a * r1 * r2
    for root in solve_quadratic(a, b, c, 1e-9):
        x = root.value
        scale = max(1.0, abs(a * x * x), abs(b * x), abs(c))
        assert abs(a * x * x + b * x + c) / scale < 1e-6


def test_point_segment_distance_examples():
    assert point_segment_distance((0, 1), seg((-1, 0), (1, 0))) == (1.0, 0.5)
    assert point_segment_distance((3, 0), seg((-1, 0), (1, 0))) == (2.0, 1.0)
    assert point_segment_distance((0, 0), seg((0, 0), (2, 2))) == (0.0, 0.0)


@given(pts, pts, pts)
def test_point_segment_distance_matches_dense_scan(p, a, b):
    assume(math.dist(a, b) > 1e-3)
    d, _ = point_segment_distance(p, seg(a, b))
    ref, _ = dense_point_segment_distance(p, a, b)
    assert d <= ref + 1e-12
    assert ref - d <= math.dist(a, b) / 20000 + 1e-9


def test_free_interval_examples():
    lo, hi = free_interval((0, 0), 1.0, seg((-2, 0), (2, 0)))
    assert (lo, hi) == (pytest.approx(0.25), pytest.approx(0.75))
    assert free_interval((0, 3), 1.0, seg((-2, 0), (2, 0))) is None
    lo, hi = free_interval((0, 0.6), 1.0, seg((-2, 0), (2, 0)))
    assert (lo, hi) == (pytest.approx(0.3), pytest.approx(0.7))


def test_free_interval_tangent_is_degenerate():
    lo, hi = free_interval((0, 1), 1.0, seg((-2, 0), (2, 0)))
    assert lo == pytest.approx(0.5) and hi == pytest.approx(0.5)


def test_free_interval_snaps_to_segment_ends():
    assert free_interval((0, 0), 5.0, seg((-2, 0), (2, 0))) == (0.0, 1.0)
    lo, hi = free_interval((-2, 0), 1.0, seg((-2, 0), (2, 0)))
    assert lo == 0.0 and hi == pytest.approx(0.25)


@given(pts, st.floats(0.0, 8.0), pts, pts)
def test_free_interval_endpoints_on_circle(c, r, a, b):
    assume(math.dist(a, b) > 1e-3)
    iv = free_interval(c, r, seg(a, b), 0.0)
    if iv is None:
        assert point_segment_distance(c, seg(a, b))[0] > r - 1e-9
        return
    s = seg(a, b)
    for x in iv:
        d = math.dist(s.at(x), c)
        if 0.0 < x < 1.0:
            assert abs(d - r) < 1e-6
        else:
            assert d <= r + 1e-6


@given(pts, st.floats(0.0, 5.0), st.floats(0.0, 5.0), pts, pts)
def test_free_interval_monotone_in_radius(c, r1, r2, a, b):
    assume(math.dist(a, b) > 1e-3)
    r1, r2 = min(r1, r2), max(r1, r2)
    small = free_interval(c, r1, seg(a, b), 0.0)
    big = free_interval(c, r2, seg(a, b), 0.0)
    if small is not None:
        assert big is not None
        assert big[0] <= small[0] + 1e-9 and small[1] <= big[1] + 1e-9


def test_circle_circle_examples():
    got = sorted(circle_circle_intersections((0, 0), (2, 0), 1.25))
    assert got[0] == pytest.approx((1, -0.75)) and got[1] == pytest.approx((1, 0.75))
    assert circle_circle_intersections((0, 0), (3, 0), 1.0) == []
    assert circle_circle_intersections((0, 0), (2, 0), 1.0) == [Point(1.0, 0.0)]
    with pytest.raises(GeometryError):
        circle_circle_intersections((1, 1), (1, 1), 1.0)


@given(pts, pts, st.floats(0.1, 6))
def test_circle_circle_points_on_both_and_symmetric(c1, c2, r):
    assume(math.dist(c1, c2) > 1e-3)
    out = circle_circle_intersections(c1, c2, r, 1e-9)
    for p in out:
        assert abs(math.dist(p, c1) - r) < 1e-6 * max(1, r) or len(out) == 1
        assert abs(math.dist(p, c2) - r) < 1e-6 * max(1, r) or len(out) == 1
    if len(out) == 2:
        # mirror images across the line through the centres
        mid = ((out[0].x + out[1].x) / 2, (out[0].y + out[1].y) / 2)
        cm = ((c1[0] + c2[0]) / 2, (c1[1] + c2[1]) / 2)
        assert math.dist(mid, cm) < 1e-6 * max(1, r)


def test_circle_segment_and_segment_intersection():
    assert sorted(circle_segment_params((0, 0), 1.0, seg((-2, 0), (2, 0)))) == [pytest.approx(0.25), pytest.approx(0.75)]
    assert segment_intersection(seg((0, 0), (2, 2)), seg((0, 2), (2, 0))) == [(0.5, 0.5)]
    assert segment_intersection(seg((0, 0), (1, 0)), seg((0, 1), (1, 1))) == []
    overlap = segment_intersection(seg((0, 0), (2, 0)), seg((1, 0), (3, 0)))
    assert overlap == [(0.5, 0.0), (1.0, 0.5)]


def test_point_and_direction_validation():
    with pytest.raises(GeometryError):
        point(float("nan"), 0)
    with pytest.raises(GeometryError):
        direction(0, 0)
    assert direction(0, -3) == Point(0.0, -1.0)
