import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from flatknot.exceptions import CollinearOverlap, GeometryError, ZeroTurn
from flatknot.geom import (
    DirLine,
    LineSeg,
    Point2,
    bisector_mirror,
    cross,
    dot,
    intersect_segments,
    point_segment_distance,
    reflect_across,
    unit,
)

coord = st.floats(-100, 100, allow_nan=False, allow_infinity=False)
angle = st.floats(0.0, 2 * math.pi, allow_nan=False)


def reflection_matrix(theta):
    # reflection across the line through the origin at angle theta
    c, s = math.cos(2 * theta), math.sin(2 * theta)
    return np.array([[c, s], [s, -c]])


class TestPoint2:
    def test_rejects_non_finite(self):
        with pytest.raises(GeometryError):
            Point2(math.nan, 0.0)
        with pytest.raises(GeometryError):
            Point2(0.0, math.inf)

    def test_vector_ops(self):
        p, q = Point2(1, 2), Point2(3, -1)
        assert p + q == (4, 1)
        assert q - p == (2, -3)
        assert p * 2 == (2, 4)
        assert -p == (-1, -2)
        assert p.perp() == (-2, 1)

    def test_dir_line_direction_is_unit(self):
        m = DirLine.through((1, 1), (3, 4))
        assert math.hypot(*m.direction) == pytest.approx(1.0, abs=1e-12)

    def test_degenerate_segment(self):
        with pytest.raises(GeometryError):
            LineSeg.checked((1, 1), (1, 1))


class TestReflect:
    def test_axis(self):
        assert reflect_across((0, 1), DirLine((0, 0), (1, 0))) == pytest.approx((0, -1))

    def test_point_on_mirror_is_fixed(self):
        m = DirLine.through((1, 2), (1, 1))
        p = m.point_at(3.7)
        assert reflect_across(p, m) == pytest.approx(p, abs=1e-12)

    def test_diagonal_matches_matrix_oracle(self):
        m = DirLine.through((0, 0), (1, 1))
        expected = reflection_matrix(math.pi / 4) @ np.array([2.0, 0.0])
        assert reflect_across((2, 0), m) == pytest.approx(tuple(expected), abs=1e-12)
        assert reflect_across((2, 0), m) == pytest.approx((0, 2), abs=1e-12)

    @given(coord, coord, angle)
    def test_matches_matrix_oracle(self, x, y, theta):
        m = DirLine((0.0, 0.0), (math.cos(theta), math.sin(theta)))
        expected = reflection_matrix(theta) @ np.array([x, y])
        assert reflect_across((x, y), m) == pytest.approx(tuple(expected), abs=1e-9)


class TestBisectorMirror:
    def test_right_angle_maps_incoming_to_outgoing(self):
        m = bisector_mirror((-1, 0), (0, 0), (0, 1))
        assert m.origin == (0, 0)
        # incoming travel (1, 0) reflects onto outgoing travel (0, 1)
        out = reflect_across(m.origin + (1, 0), m)
        assert out == pytest.approx((0, 1), abs=1e-12)
        assert abs(cross(m.direction, (1, 1))) < 1e-12

    def test_zero_turn(self):
        with pytest.raises(ZeroTurn):
            bisector_mirror((-1, 0), (0, 0), (1, 0))

    def test_fold_back_is_perpendicular(self):
        m = bisector_mirror((1, 0), (0, 0), (1, 0))
        assert abs(m.direction[0]) < 1e-12
        assert abs(m.direction[1]) == pytest.approx(1.0)

    def test_coincident_neighbour(self):
        with pytest.raises(GeometryError):
            bisector_mirror((0, 0), (0, 0), (1, 1))


class TestIntersect:
    def test_symmetric_x(self):
        p = intersect_segments(LineSeg((0, 0), (2, 2)), LineSeg((0, 2), (2, 0)))
        assert p == pytest.approx((1, 1))

    def test_parallel_disjoint(self):
        assert intersect_segments(LineSeg((0, 0), (1, 0)), LineSeg((0, 1), (1, 1))) is None

    def test_collinear_overlap(self):
        with pytest.raises(CollinearOverlap):
            intersect_segments(LineSeg((0, 0), (2, 0)), LineSeg((1, 0), (3, 0)))

    def test_collinear_touching_end_to_end(self):
        assert intersect_segments(LineSeg((0, 0), (1, 0)), LineSeg((1, 0), (2, 0))) is None

    def test_t_junction_counts_as_touching(self):
        assert intersect_segments(LineSeg((0, 0), (2, 0)), LineSeg((1, 0), (1, 1))) is None

    def test_disjoint_lines_cross_outside(self):
        assert intersect_segments(LineSeg((0, 0), (1, 0)), LineSeg((2, -1), (2, 1))) is None

    @given(coord, coord, coord, coord, coord, coord, coord, coord)
    def test_symmetric_in_arguments(self, ax, ay, bx, by, cx, cy, dx, dy):
        s1, s2 = LineSeg((ax, ay), (bx, by)), LineSeg((cx, cy), (dx, dy))
        if s1.a == s1.b or s2.a == s2.b:
            return
        try:
            p = intersect_segments(s1, s2)
        except CollinearOverlap:
            with pytest.raises(CollinearOverlap):
                intersect_segments(s2, s1)
            return
        q = intersect_segments(s2, s1)
        if p is None:
            return
        # a reported crossing lies on both segments
        scale = max(1.0, *map(abs, (ax, ay, bx, by, cx, cy, dx, dy)))
        assert point_segment_distance(p, s1) <= 1e-9 * scale
        assert point_segment_distance(p, s2) <= 1e-9 * scale
        if q is not None:
            assert p == pytest.approx(q, abs=1e-9 * scale)


def test_point_segment_distance():
    seg = LineSeg((0, 0), (2, 0))
    assert point_segment_distance((1, 3), seg) == 3
    assert point_segment_distance((-3, 4), seg) == 5
    assert point_segment_distance((1, 0), seg) == 0


def test_unit_and_dot():
    u = unit((3, 4))
    assert dot(u, u) == pytest.approx(1.0)
    with pytest.raises(GeometryError):
        unit((0, 0))
