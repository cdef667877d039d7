"""Planar primitives: points, directed lines, segments, reflections and mirrors.

Everything here is immutable and pure. Angles are never stored; orientation
and angle comparisons go through dot and cross products of unit vectors.

Degeneracy predicates use a scale-relative tolerance, ``REL_EPS`` times the
bounding-box diagonal of the points involved.
"""

from __future__ import annotations

import math
from typing import Iterable, NamedTuple, Optional

from .exceptions import CollinearOverlap, GeometryError, ZeroTurn

__all__ = [
    "REL_EPS",
    "Point2",
    "DirLine",
    "LineSeg",
    "cross",
    "dot",
    "norm",
    "unit",
    "distance",
    "bbox_diagonal",
    "geom_eps",
    "reflect_across",
    "bisector_mirror",
    "line_intersection_param",
    "intersect_segments",
    "point_segment_distance",
]

REL_EPS = 1e-9


class _XY(NamedTuple):
    x: float
    y: float


class Point2(_XY):
    """A finite point (or vector) in the plane.

    Supports ``+``, ``-``, scalar ``*`` and unary ``-`` as vector operations.
    """

    __slots__ = ()

    def __new__(cls, x, y):
        x = float(x)
        y = float(y)
        if not (math.isfinite(x) and math.isfinite(y)):
            raise GeometryError(f"non-finite coordinates ({x}, {y})")
        return super().__new__(cls, x, y)

    def __add__(self, other):
        return Point2(self.x + other[0], self.y + other[1])

    def __sub__(self, other):
        return Point2(self.x - other[0], self.y - other[1])

    def __rsub__(self, other):
        return Point2(other[0] - self.x, other[1] - self.y)

    def __mul__(self, k):
        return Point2(self.x * k, self.y * k)

    __rmul__ = __mul__

    def __truediv__(self, k):
        return Point2(self.x / k, self.y / k)

    def __neg__(self):
        return Point2(-self.x, -self.y)

    def perp(self) -> "Point2":
        """Rotate by +90 degrees."""
        return Point2(-self.y, self.x)


def cross(u, v) -> float:
    return u[0] * v[1] - u[1] * v[0]


def dot(u, v) -> float:
    return u[0] * v[0] + u[1] * v[1]


def norm(u) -> float:
    return math.hypot(u[0], u[1])


def unit(u) -> Point2:
    n = math.hypot(u[0], u[1])
    if n == 0.0:
        raise GeometryError("cannot normalize the zero vector")
    return Point2(u[0] / n, u[1] / n)


def distance(p, q) -> float:
    return math.hypot(p[0] - q[0], p[1] - q[1])


def bbox_diagonal(points: Iterable) -> float:
    xs, ys = [], []
    for p in points:
        xs.append(p[0])
        ys.append(p[1])
    if not xs:
        return 0.0
    return math.hypot(max(xs) - min(xs), max(ys) - min(ys))


def geom_eps(points: Iterable) -> float:
    """Degeneracy tolerance for a set of points.

    Falls back to an absolute ``REL_EPS`` when all points coincide.
    """
    d = bbox_diagonal(points)
    return REL_EPS * d if d > 0.0 else REL_EPS


class DirLine(NamedTuple):
    """An oriented line: ``origin + t * direction`` with a unit direction."""

    origin: Point2
    direction: Point2

    @classmethod
    def through(cls, origin, direction) -> "DirLine":
        return cls(Point2(*origin), unit(direction))

    def point_at(self, t: float) -> Point2:
        o, d = self.origin, self.direction
        return Point2(o.x + t * d.x, o.y + t * d.y)

    def signed_distance(self, p) -> float:
        """Positive on the left of the direction."""
        return cross(self.direction, (p[0] - self.origin.x, p[1] - self.origin.y))


class LineSeg(NamedTuple):
    a: Point2
    b: Point2

    @classmethod
    def checked(cls, a, b) -> "LineSeg":
        a, b = Point2(*a), Point2(*b)
        if distance(a, b) <= geom_eps((a, b)) or a == b:
            raise GeometryError(f"degenerate segment {a} -> {b}")
        return cls(a, b)

    @property
    def length(self) -> float:
        return distance(self.a, self.b)

    @property
    def midpoint(self) -> Point2:
        return Point2(0.5 * (self.a.x + self.b.x), 0.5 * (self.a.y + self.b.y))


def reflect_across(p, m: DirLine) -> Point2:
    """Mirror image of ``p`` across the line ``m``."""
    ox, oy = m.origin
    dx, dy = m.direction
    vx, vy = p[0] - ox, p[1] - oy
    t = vx * dx + vy * dy
    # p' = o + 2 (v.d) d - v
    return Point2(ox + 2.0 * t * dx - vx, oy + 2.0 * t * dy - vy)


def bisector_mirror(prev, v, next_) -> DirLine:
    """Fold mirror at ``v`` for the polyline ``prev -> v -> next_``.

    The mirror reflects the incoming travel direction ``v - prev`` onto the
    outgoing one ``next_ - v``, so both edges lie on the same side of it, the
    way a light ray bounces off a mirror. A fold-back (``prev`` and ``next_``
    on the same ray from ``v``) gives the line perpendicular to the edge.

    Raises ZeroTurn when the polyline runs straight through ``v``.
    """
    eps = geom_eps((prev, v, next_))
    a = (v[0] - prev[0], v[1] - prev[1])
    b = (next_[0] - v[0], next_[1] - v[1])
    la, lb = norm(a), norm(b)
    if la <= eps or lb <= eps:
        raise GeometryError("fold vertex coincides with a neighbour")
    d_in = (a[0] / la, a[1] / la)
    d_out = (b[0] / lb, b[1] / lb)
    nx, ny = d_out[0] - d_in[0], d_out[1] - d_in[1]
    # |d_out - d_in| = 2 sin(turn / 2); compare the implied lateral offset
    # against the tolerance at the scale of the shorter edge.
    if math.hypot(nx, ny) * min(la, lb) <= eps:
        raise ZeroTurn(f"no turn at vertex ({v[0]}, {v[1]})")
    normal = unit((nx, ny))
    return DirLine(Point2(*v), Point2(-normal.y, normal.x))


def line_intersection_param(p, u, q, w) -> Optional[float]:
    """Parameter ``t`` with ``p + t u`` on the line ``q + s w``; None if parallel."""
    den = cross(u, w)
    if den == 0.0:
        return None
    return cross((q[0] - p[0], q[1] - p[1]), w) / den


def intersect_segments(s1: LineSeg, s2: LineSeg) -> Optional[Point2]:
    """Transverse crossing point of two segments.

    Returns None when the segments are disjoint or only touch (an endpoint of
    one lying on the other counts as touching). Raises CollinearOverlap when
    they are collinear and share more than one point.
    """
    a, b = s1
    c, d = s2
    eps = geom_eps((a, b, c, d))
    r = (b[0] - a[0], b[1] - a[1])
    s = (d[0] - c[0], d[1] - c[1])
    lr, ls = norm(r), norm(s)
    # signed distances of each segment's endpoints from the other's line
    dc = cross(r, (c[0] - a[0], c[1] - a[1])) / lr
    dd = cross(r, (d[0] - a[0], d[1] - a[1])) / lr
    da = cross(s, (a[0] - c[0], a[1] - c[1])) / ls
    db = cross(s, (b[0] - c[0], b[1] - c[1])) / ls

    if abs(dc) <= eps and abs(dd) <= eps:
        # collinear: compare projections on s1
        t0 = dot((c[0] - a[0], c[1] - a[1]), r) / lr
        t1 = dot((d[0] - a[0], d[1] - a[1]), r) / lr
        lo, hi = max(0.0, min(t0, t1)), min(lr, max(t0, t1))
        if hi - lo > eps:
            raise CollinearOverlap(f"segments {s1} and {s2} overlap")
        return None

    if (dc > eps and dd < -eps) or (dc < -eps and dd > eps):
        if (da > eps and db < -eps) or (da < -eps and db > eps):
            t = da / (da - db)
            return Point2(a[0] + t * r[0], a[1] + t * r[1])
    return None


def point_segment_distance(p, seg: LineSeg) -> float:
    a, b = seg
    r = (b[0] - a[0], b[1] - a[1])
    rr = dot(r, r)
    if rr == 0.0:
        return distance(p, a)
    t = max(0.0, min(1.0, dot((p[0] - a[0], p[1] - a[1]), r) / rr))
    return math.hypot(a[0] + t * r[0] - p[0], a[1] + t * r[1] - p[1])
