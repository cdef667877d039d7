"""Flat ribbons folded along a piecewise-linear core.

A ribbon of width ``W`` is the union of one straight strip per core edge.
Each strip is the band of half-width ``W/2`` around its edge, cut off at the
fold mirrors of its two end vertices (or at the truncation cuts of an open
core). Adjacent strips meet along a crease, the piece of the mirror line
shared by both bands.

A width is admissible when
  * no strip collapses (its two end lines cross inside the band),
  * at every woven crossing of edges ``i`` and ``j``, strip ``i`` keeps clear
    of the creases or cuts at the ends of edge ``j``, and vice versa,
  * strips of edges that neither share a vertex nor cross do not overlap.
So two strips meet only along a shared crease or transversely at a declared
crossing. Touching is allowed. Admissibility is monotone in ``W``, so the
largest admissible width is found by bisection.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import cached_property
from typing import NamedTuple, Optional

from .exceptions import (
    CollinearOverlap,
    InvalidCore,
    InvalidTruncation,
    InvalidWeaving,
    ModeMismatch,
    NoPositiveWidth,
    ZeroTurn,
)
from .geom import (
    DirLine,
    LineSeg,
    Point2,
    bbox_diagonal,
    bisector_mirror,
    cross,
    distance,
    geom_eps,
    intersect_segments,
    point_segment_distance,
    unit,
)

__all__ = [
    "CUT_MODES",
    "LENGTH_MODES",
    "CONTACT_REL_EPS",
    "Truncation",
    "CoreCurve",
    "Crossing",
    "Weaving",
    "Crease",
    "Strip",
    "RibbonLayout",
    "RibbonMeasure",
    "creases",
    "layout",
    "admissible",
    "max_width",
    "core_length",
    "ratio",
    "alternating_weaving",
    "crossing_signature",
]

CUT_MODES = ("perpendicular", "flush")
LENGTH_MODES = ("closed", "truncated")

# Contacts closer than this (relative to the core's size) count as touching.
CONTACT_REL_EPS = 1e-14

BISECT_REL_TOL = 1e-14
BISECT_MAX_ITER = 200
LOWER_PROBE = 1e-6
HINT_BRACKET = 1.01


@dataclass(frozen=True)
class Truncation:
    """Where an open ribbon is cut.

    Offsets are measured inward along the first and last edge. ``cut`` picks
    the cut line through the offset point: ``"perpendicular"`` to the edge,
    or ``"flush"``, along the mirror the ribbon would fold on if its two
    ends were joined by a straight edge (flush with the polygon sides of the
    pentagon and hexagon constructions).
    """

    start_offset: float = 0.0
    end_offset: float = 0.0
    cut: str = "perpendicular"

    def __post_init__(self):
        if self.cut not in CUT_MODES:
            raise InvalidTruncation(f"unknown cut mode {self.cut!r}")
        for name in ("start_offset", "end_offset"):
            v = float(getattr(self, name))
            if not math.isfinite(v) or v < 0.0:
                raise InvalidTruncation(f"{name} must be finite and >= 0, got {v}")
            object.__setattr__(self, name, v)


@dataclass(frozen=True, eq=True)
class CoreCurve:
    """Center line of a flat ribbon.

    Parameters
    ----------
    vertices : sequence of (x, y)
        At least three points. Every interior vertex (every vertex, when
        ``closed``) must be a genuine fold.
    closed : bool
        Whether the last vertex connects back to the first.
    truncation : Truncation, optional
        Cut specification of an open ribbon; must be None when closed.
    """

    vertices: tuple
    closed: bool = False
    truncation: Optional[Truncation] = None

    def __post_init__(self):
        object.__setattr__(self, "vertices", tuple(Point2(*v) for v in self.vertices))
        object.__setattr__(self, "closed", bool(self.closed))
        self._validate()

    # -- structure -----------------------------------------------------

    @property
    def n_vertices(self) -> int:
        return len(self.vertices)

    @property
    def n_edges(self) -> int:
        n = len(self.vertices)
        return n if self.closed else n - 1

    def edge(self, k: int) -> tuple[Point2, Point2]:
        v = self.vertices
        return v[k], v[(k + 1) % len(v)]

    @cached_property
    def edges(self) -> tuple:
        return tuple(self.edge(k) for k in range(self.n_edges))

    @cached_property
    def edge_lengths(self) -> tuple:
        return tuple(distance(p, q) for p, q in self.edges)

    @property
    def fold_indices(self) -> range:
        n = len(self.vertices)
        return range(n) if self.closed else range(1, n - 1)

    def is_fold(self, idx: int) -> bool:
        return self.closed or 0 < idx < len(self.vertices) - 1

    def edge_vertex_indices(self, k: int) -> tuple[int, int]:
        return k, (k + 1) % len(self.vertices)

    @cached_property
    def eps(self) -> float:
        return geom_eps(self.vertices)

    @cached_property
    def diagonal(self) -> float:
        return bbox_diagonal(self.vertices)

    @cached_property
    def mirrors(self) -> dict:
        """Fold mirror line per fold vertex index."""
        v = self.vertices
        n = len(v)
        return {i: bisector_mirror(v[i - 1], v[i], v[(i + 1) % n]) for i in self.fold_indices}

    @cached_property
    def crossings(self) -> tuple:
        """Transverse self-crossings as ``(i, j, point)`` with ``i < j``."""
        out = []
        m = self.n_edges
        for i in range(m):
            si = LineSeg(*self.edge(i))
            for j in range(i + 1, m):
                if self._adjacent(i, j):
                    continue
                p = intersect_segments(si, LineSeg(*self.edge(j)))
                if p is not None:
                    out.append((i, j, p))
        return tuple(out)

    def _adjacent(self, i: int, j: int) -> bool:
        if abs(i - j) == 1:
            return True
        return self.closed and {i, j} == {0, self.n_edges - 1}

    # -- truncation geometry -------------------------------------------

    @cached_property
    def cut_lines(self) -> tuple:
        """``(start, end)`` cut lines of an open core, None for closed cores.

        An open core without a truncation spec is cut perpendicular at its
        end vertices.
        """
        if self.closed:
            return None
        tr = self.truncation or Truncation()
        v = self.vertices
        (p0, p1), (q0, q1) = self.edge(0), self.edge(self.n_edges - 1)
        u0, u1 = unit(p1 - p0), unit(q1 - q0)
        start = p0 + u0 * tr.start_offset
        end = q1 - u1 * tr.end_offset
        if tr.cut == "perpendicular":
            return DirLine(start, u0.perp()), DirLine(end, u1.perp())
        try:
            m0 = bisector_mirror(v[-1], v[0], v[1])
            m1 = bisector_mirror(v[-2], v[-1], v[0])
        except (ZeroTurn, ValueError) as exc:
            raise InvalidTruncation(f"flush cut undefined: {exc}") from None
        return DirLine(start, m0.direction), DirLine(end, m1.direction)

    # -- transforms ----------------------------------------------------

    def similar(self, scale=1.0, angle=0.0, shift=(0.0, 0.0), mirror=False) -> "CoreCurve":
        """Image under ``x -> R(angle) S(mirror) (scale x) + shift``."""
        c, s = math.cos(angle), math.sin(angle)
        out = []
        for x, y in self.vertices:
            if mirror:
                y = -y
            x, y = scale * x, scale * y
            out.append((c * x - s * y + shift[0], s * x + c * y + shift[1]))
        tr = self.truncation
        if tr is not None:
            tr = Truncation(tr.start_offset * scale, tr.end_offset * scale, tr.cut)
        return CoreCurve(out, self.closed, tr)

    def with_vertices(self, vertices) -> "CoreCurve":
        return CoreCurve(vertices, self.closed, self.truncation)

    # -- validation ----------------------------------------------------

    def _validate(self):
        v = self.vertices
        n = len(v)
        if n < 3:
            raise InvalidCore(f"need at least 3 vertices, got {n}")
        if self.closed and self.truncation is not None:
            raise InvalidCore("a closed core cannot carry a truncation")
        if self.truncation is not None and not isinstance(self.truncation, Truncation):
            raise InvalidCore("truncation must be a Truncation")
        eps = self.eps
        for k, (p, q) in enumerate(self.edges):
            if distance(p, q) <= eps:
                raise InvalidCore(f"edge {k} is degenerate")
        for i in self.fold_indices:
            bisector_mirror(v[i - 1], v[i], v[(i + 1) % n])

        m = self.n_edges
        segs = [LineSeg(*e) for e in self.edges]
        seen = []
        for i in range(m):
            for j in range(i + 1, m):
                if self._adjacent(i, j):
                    continue
                try:
                    p = intersect_segments(segs[i], segs[j])
                except CollinearOverlap:
                    raise InvalidCore(f"edges {i} and {j} overlap") from None
                for a, b in ((i, j), (j, i)):
                    for idx in self.edge_vertex_indices(b):
                        if point_segment_distance(v[idx], segs[a]) <= eps:
                            raise InvalidCore(f"vertex {idx} lies on non-adjacent edge {a}")
                if p is not None:
                    for q in seen:
                        if distance(p, q) <= eps:
                            raise InvalidCore(f"three or more edges meet near ({p.x}, {p.y})")
                    seen.append(p)

        tr = self.truncation
        if tr is not None:
            lens = self.edge_lengths
            if tr.start_offset > lens[0]:
                raise InvalidTruncation("start offset exceeds the first edge")
            if tr.end_offset > lens[-1]:
                raise InvalidTruncation("end offset exceeds the last edge")
            if m == 1 and tr.start_offset + tr.end_offset >= lens[0]:
                raise InvalidTruncation("truncation removes the whole core")


class Crossing(NamedTuple):
    i: int
    j: int
    over: int

    @property
    def under(self) -> int:
        return self.j if self.over == self.i else self.i


@dataclass(frozen=True)
class Weaving:
    """Over/under choice at every crossing, keyed by edge pairs ``i < j``."""

    crossings: tuple = ()

    def __post_init__(self):
        out = []
        for c in self.crossings:
            i, j, over = (int(x) for x in c)
            if i == j:
                raise InvalidWeaving(f"crossing of edge {i} with itself")
            if over not in (i, j):
                raise InvalidWeaving(f"over edge {over} is not one of ({i}, {j})")
            if i > j:
                i, j = j, i
            out.append(Crossing(i, j, over))
        out.sort()
        pairs = [(c.i, c.j) for c in out]
        if len(set(pairs)) != len(pairs):
            raise InvalidWeaving("duplicate crossing entries")
        object.__setattr__(self, "crossings", tuple(out))

    @property
    def pairs(self) -> frozenset:
        return frozenset((c.i, c.j) for c in self.crossings)

    def flipped(self) -> "Weaving":
        return Weaving(tuple(Crossing(c.i, c.j, c.under) for c in self.crossings))

    def check(self, core: CoreCurve) -> "Weaving":
        """Raise InvalidWeaving unless the entries match the core's crossings."""
        geometric = {(i, j) for i, j, _ in core.crossings}
        declared = self.pairs
        for c in self.crossings:
            if (c.i, c.j) not in geometric:
                raise InvalidWeaving(f"edges {c.i} and {c.j} do not cross")
        missing = sorted(geometric - declared)
        if missing:
            raise InvalidWeaving(f"no over/under entry for crossings {missing}")
        return self


def alternating_weaving(core: CoreCurve) -> Weaving:
    """Weaving that alternates over, under, over, ... along the core.

    Raises InvalidWeaving when the diagram admits no alternating choice.
    """
    events = []
    for i, j, p in core.crossings:
        for e in (i, j):
            a = core.vertices[e]
            events.append((e, distance(a, p), i, j))
    events.sort()
    over = {}
    for pos, (e, _, i, j) in enumerate(events):
        is_over = pos % 2 == 0
        want = e if is_over else (j if e == i else i)
        if over.setdefault((i, j), want) != want:
            raise InvalidWeaving("diagram cannot be woven alternately")
    return Weaving(tuple(Crossing(i, j, o) for (i, j), o in over.items()))


def crossing_signature(core: CoreCurve) -> tuple:
    """Per edge, the partner edges in the order they are crossed."""
    hits = [[] for _ in range(core.n_edges)]
    for i, j, p in core.crossings:
        hits[i].append((distance(core.vertices[i], p), j))
        hits[j].append((distance(core.vertices[j], p), i))
    return tuple(tuple(k for _, k in sorted(h)) for h in hits)


class Crease(NamedTuple):
    vertex_index: int
    mirror: DirLine
    segment: LineSeg


class Strip(NamedTuple):
    """Quadrilateral of one edge, corners counter-clockwise.

    Order: right side at the start, right side at the end, left side at the
    end, left side at the start (left relative to the edge direction).
    """

    edge_index: int
    corners: tuple


@dataclass(frozen=True)
class RibbonLayout:
    width: float
    strips: tuple
    creases: tuple
    cuts: tuple = ()

    def crease_at(self, vertex_index: int) -> Crease:
        for c in self.creases:
            if c.vertex_index == vertex_index:
                return c
        raise KeyError(vertex_index)


@dataclass(frozen=True)
class RibbonMeasure:
    length: float
    width: float
    ratio: float = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "ratio", self.length / self.width)


# ---------------------------------------------------------------------------
# width-dependent geometry


def _check_width(width) -> float:
    w = float(width)
    if not math.isfinite(w) or w <= 0.0:
        raise ValueError(f"width must be a positive finite number, got {width!r}")
    return w


class _Frame(NamedTuple):
    """Width-independent coefficients: every corner is linear in ``W``."""

    # per edge: (px, py, ux, uy, nx, ny, s0, s1, e0, e1) with the start line
    # met at t = s0 - sigma * (W/2) * s1 on side sigma, likewise the end line
    edges: tuple
    # per fold vertex index: (vx, vy, mx, my, k), half crease length = k * W
    folds: dict
    tol: float
    # per edge: four inward half-planes (nx, ny, c, k) of the strip,
    # nx * x + ny * y >= c + k * W
    halfplanes: tuple


def _frame(core: CoreCurve) -> _Frame:
    frame = core.__dict__.get("_frame")
    if frame is not None:
        return frame
    cuts = core.cut_lines
    edges = []
    halfplanes = []
    for k in range(core.n_edges):
        p, q = core.edge(k)
        u = unit(q - p)
        n = u.perp()
        a, b = core.edge_vertex_indices(k)
        start = core.mirrors[a] if core.is_fold(a) else cuts[0]
        end = core.mirrors[b] if core.is_fold(b) else cuts[1]
        coeffs = []
        for line in (start, end):
            den = cross(u, line.direction)
            coeffs.append(cross(line.origin - p, line.direction) / den)
            coeffs.append(cross(n, line.direction) / den)
        edges.append((p.x, p.y, u.x, u.y, n.x, n.y, *coeffs))
        np_ = n.x * p.x + n.y * p.y
        hp = [(n.x, n.y, np_, -0.5), (-n.x, -n.y, -np_, -0.5)]
        for line, sign in ((start, 1.0), (end, -1.0)):
            nu = line.direction.perp()
            if (nu.x * u.x + nu.y * u.y) * sign < 0.0:
                nu = -nu
            hp.append((nu.x, nu.y, nu.x * line.origin.x + nu.y * line.origin.y, 0.0))
        halfplanes.append(tuple(hp))
    folds = {}
    for idx in core.fold_indices:
        m = core.mirrors[idx]
        p, q = core.edge(idx)
        u = unit(q - p)
        v = core.vertices[idx]
        folds[idx] = (v.x, v.y, m.direction.x, m.direction.y, 0.5 / abs(cross(u, m.direction)))
    frame = _Frame(tuple(edges), folds, CONTACT_REL_EPS * core.diagonal, tuple(halfplanes))
    core.__dict__["_frame"] = frame
    return frame


def _crease_points(fold, width):
    vx, vy, mx, my, k = fold
    half = k * width
    return (vx - mx * half, vy - my * half), (vx + mx * half, vy + my * half)


def _strip_corners(edge, width):
    """Corners (CCW) and the smaller of the two side lengths, possibly negative."""
    px, py, ux, uy, nx, ny, s0, s1, e0, e1 = edge
    h = 0.5 * width
    corners = []
    for sigma, t_of in ((-1.0, (s0 + h * s1, e0 + h * e1)), (1.0, (e0 - h * e1, s0 - h * s1))):
        bx, by = px + sigma * h * nx, py + sigma * h * ny
        for t in t_of:
            corners.append((bx + t * ux, by + t * uy))
    room = (e0 - s0) - h * abs(e1 - s1)
    return corners, room


def _crease(core: CoreCurve, idx: int, width: float) -> Crease:
    a, b = _crease_points(_frame(core).folds[idx], width)
    return Crease(idx, core.mirrors[idx], LineSeg(Point2(*a), Point2(*b)))


def creases(core: CoreCurve, width: float) -> list:
    """One crease per fold vertex, centred on it, of length ``W / sin(alpha)``."""
    width = _check_width(width)
    return [_crease(core, i, width) for i in core.fold_indices]


def layout(core: CoreCurve, width: float) -> RibbonLayout:
    """Strips, creases and truncation cuts of the ribbon at ``width``."""
    width = _check_width(width)
    frame = _frame(core)
    strips = []
    for k, edge in enumerate(frame.edges):
        corners, room = _strip_corners(edge, width)
        a, b = core.edge_vertex_indices(k)
        if room < -frame.tol and not (core.is_fold(a) and core.is_fold(b)):
            raise InvalidTruncation(f"truncation cut meets the crease on edge {k}")
        strips.append(Strip(k, tuple(Point2(*c) for c in corners)))
    cuts = ()
    if not core.closed:
        first, last = strips[0].corners, strips[-1].corners
        cuts = (LineSeg(first[0], first[3]), LineSeg(last[1], last[2]))
    return RibbonLayout(width, tuple(strips), tuple(creases(core, width)), cuts)


def _enters_strip(a, b, halfplanes, width, tol) -> bool:
    """Whether segment ``ab`` reaches deeper than ``tol`` into a strip."""
    t0, t1 = 0.0, 1.0
    ax, ay = a
    dx, dy = b[0] - ax, b[1] - ay
    for nx, ny, c, k in halfplanes:
        f0 = nx * ax + ny * ay - c - k * width - tol
        df = nx * dx + ny * dy
        if df == 0.0:
            if f0 < 0.0:
                return False
            continue
        t = -f0 / df
        if df > 0.0:
            if t > t0:
                t0 = t
        elif t < t1:
            t1 = t
        if t0 >= t1:
            return False
    return True


def _convex_overlap(P, Q, tol) -> bool:
    """Whether two convex CCW polygons share interior deeper than ``tol``."""
    for A, B in ((P, Q), (Q, P)):
        m = len(A)
        for k in range(m):
            p, q = A[k], A[(k + 1) % m]
            ex, ey = q[0] - p[0], q[1] - p[1]
            le = math.hypot(ex, ey)
            if le <= tol:
                continue
            nx, ny = -ey / le, ex / le
            # B lies outside A's edge k when every B corner is on the outer side
            if max(nx * (b[0] - p[0]) + ny * (b[1] - p[1]) for b in B) <= tol:
                return False
    return True


def admissible(core: CoreCurve, weaving: Weaving, width: float) -> bool:
    """Whether the ribbon can be woven at ``width``.

    Fails when a strip collapses, when a strip crossing edge ``j`` covers a
    crease or cut at an end of ``j``, or when the strips of two non-adjacent
    edges that do not cross overlap.
    """
    width = _check_width(width)
    frame = _frame(core)
    tol = frame.tol
    h = 0.5 * width
    for edge in frame.edges:
        if (edge[8] - edge[6]) - h * abs(edge[9] - edge[7]) < -tol:
            return False
    n = core.n_vertices
    folds = frame.folds
    ends = {}
    for c in weaving.crossings:
        for s, other in ((c.i, c.j), (c.j, c.i)):
            for idx in (other, (other + 1) % n):
                seg = ends.get(idx)
                if seg is None:
                    if idx in folds:
                        seg = _crease_points(folds[idx], width)
                    else:
                        seg = _cut_points(core, frame, idx, width)
                    ends[idx] = seg
                if _enters_strip(seg[0], seg[1], frame.halfplanes[s], width, tol):
                    return False
    apart = _apart_pairs(core)
    if apart:
        corners = {}
        for i, j in apart:
            for k in (i, j):
                if k not in corners:
                    corners[k] = _strip_corners(frame.edges[k], width)[0]
            if _convex_overlap(corners[i], corners[j], tol):
                return False
    return True


def _cut_points(core, frame, idx, width):
    if idx == 0:
        c = _strip_corners(frame.edges[0], width)[0]
        return c[0], c[3]
    c = _strip_corners(frame.edges[-1], width)[0]
    return c[1], c[2]


def _apart_pairs(core: CoreCurve) -> tuple:
    pairs = core.__dict__.get("_apart")
    if pairs is None:
        crossing = {(i, j) for i, j, _ in core.crossings}
        m = core.n_edges
        pairs = tuple(
            (i, j) for i in range(m) for j in range(i + 1, m)
            if not core._adjacent(i, j) and (i, j) not in crossing
        )
        core.__dict__["_apart"] = pairs
    return pairs


def max_width(core: CoreCurve, weaving: Weaving, rel_tol: float = BISECT_REL_TOL,
              max_iter: int = BISECT_MAX_ITER, hint: Optional[float] = None,
              bracket: float = HINT_BRACKET - 1.0) -> float:
    """Largest admissible width, by bracketing then bisection.

    The returned value is itself admissible and lies within ``rel_tol``
    (relative) below the supremum. ``hint``, a guess of the answer, only
    narrows the initial bracket to ``hint * (1 +/- bracket)``; the bracket
    widens geometrically until it holds the answer.
    """
    floor = LOWER_PROBE * core.diagonal
    if not admissible(core, weaving, floor):
        raise NoPositiveWidth("inadmissible at the lower probe width")
    lo, hi = floor, None
    if hint is not None and hint > floor:
        step = max(bracket, rel_tol)
        if admissible(core, weaving, hint):
            lo = hint
        else:
            hi = hint
            while hi is not None:
                cand = hi / (1.0 + step)
                if cand <= floor:
                    break
                if admissible(core, weaving, cand):
                    lo = cand
                    break
                hi = cand
                step *= 4.0
        if hi is None:
            for _ in range(max_iter):
                cand = lo * (1.0 + step)
                if not admissible(core, weaving, cand):
                    hi = cand
                    break
                lo = cand
                step = min(4.0 * step, 1.0)
            else:
                raise NoPositiveWidth("no inadmissible width found while widening")
    if hi is None:
        hi = 2.0 * lo
        for _ in range(max_iter):
            if not admissible(core, weaving, hi):
                break
            lo, hi = hi, 2.0 * hi
        else:
            raise NoPositiveWidth("no inadmissible width found while doubling")
    for _ in range(max_iter):
        if hi - lo <= rel_tol * lo:
            break
        mid = 0.5 * (lo + hi)
        if admissible(core, weaving, mid):
            lo = mid
        else:
            hi = mid
    return lo


def core_length(core: CoreCurve, mode: str = "truncated") -> float:
    """Closed length (loop perimeter) or truncated length (between the cuts)."""
    if mode not in LENGTH_MODES:
        raise ModeMismatch(f"unknown length mode {mode!r}")
    if mode == "closed":
        if not core.closed:
            raise ModeMismatch("closed length needs a closed core")
        return math.fsum(core.edge_lengths)
    if core.closed or core.truncation is None:
        raise ModeMismatch("truncated length needs an open core with a truncation")
    tr = core.truncation
    return math.fsum(core.edge_lengths) - tr.start_offset - tr.end_offset


def ratio(core: CoreCurve, weaving: Weaving, mode: str = "truncated") -> RibbonMeasure:
    length = core_length(core, mode)
    return RibbonMeasure(length, max_width(core, weaving))
