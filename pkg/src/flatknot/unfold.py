"""Cut-and-unfold development of a truncated ribbon into a straight strip.

The unfolded strip lies along the positive x axis, from the start cut at
``x = 0`` to the end cut at ``x = total_length``. Each fold leaves a mark: its
arclength position on the center line and a signed fold angle ``theta``. The
crease of that fold crosses the strip at angle ``theta / 2`` to the axis, so
folding the rest of the strip across it turns the center line by ``theta``
in the strip's own frame.

Sign convention: the turn is measured counter-clockwise in the frame of the
face currently seen from above. Every fold flips the face, so a core that
always turns the same way (the pentagon trefoil) gets alternating signs.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

from .exceptions import ModeMismatch
from .geom import DirLine, Point2, cross, dot, reflect_across, unit
from .ribbon import CoreCurve

__all__ = ["FoldMark", "UnfoldedStrip", "unfold", "refold", "turning_angles"]


class FoldMark(NamedTuple):
    position: float
    angle: float


@dataclass(frozen=True)
class UnfoldedStrip:
    width: float
    total_length: float
    fold_marks: tuple
    start_cut_angle: float = math.pi / 2
    end_cut_angle: float = math.pi / 2

    @property
    def segment_lengths(self) -> tuple:
        """Center-line lengths between consecutive cuts and fold marks."""
        xs = [0.0, *(m.position for m in self.fold_marks), self.total_length]
        return tuple(b - a for a, b in zip(xs, xs[1:]))

    def _crossings(self, side: int) -> list:
        y = 0.5 * self.width * side
        lines = [(0.0, self.start_cut_angle)]
        lines += [(m.position, 0.5 * m.angle) for m in self.fold_marks]
        lines.append((self.total_length, self.end_cut_angle))
        return [s + y * math.cos(b) / math.sin(b) for s, b in lines]

    def boundary_lengths(self, side: int = 1) -> tuple:
        """Lengths along one long edge of the strip between cut and crease lines.

        ``side=+1`` is the left edge (``y = +W/2``), ``-1`` the right edge.
        """
        xs = self._crossings(side)
        return tuple(b - a for a, b in zip(xs, xs[1:]))

    def crease_segments(self) -> list:
        """Crease and cut chords across the flat strip, start cut first."""
        left, right = self._crossings(1), self._crossings(-1)
        h = 0.5 * self.width
        return [(Point2(r, -h), Point2(l, h)) for l, r in zip(left, right)]


def _signed_angle(u, v) -> float:
    return math.atan2(cross(u, v), dot(u, v))


def turning_angles(core: CoreCurve) -> list:
    """Signed turn at each fold vertex of an open core, in (-pi, pi]."""
    dirs = [unit(q - p) for p, q in core.edges]
    return [_signed_angle(a, b) for a, b in zip(dirs, dirs[1:])]


def unfold(core: CoreCurve, width: float) -> UnfoldedStrip:
    """Develop a truncated open ribbon into a flat strip."""
    if core.closed or core.truncation is None:
        raise ModeMismatch("unfolding needs an open core with a truncation")
    if not width > 0:
        raise ValueError("width must be positive")
    tr = core.truncation
    lengths = list(core.edge_lengths)
    lengths[0] -= tr.start_offset
    lengths[-1] -= tr.end_offset

    marks = []
    parity = 1.0
    pos = 0.0
    for seg, turn in zip(lengths, turning_angles(core)):
        pos += seg
        marks.append(FoldMark(pos, parity * turn))
        parity = -parity
    total = math.fsum(lengths)

    start_cut, end_cut = core.cut_lines
    dirs = [unit(q - p) for p, q in core.edges]
    a0 = _signed_angle(dirs[0], start_cut.direction)
    a1 = parity * _signed_angle(dirs[-1], end_cut.direction)
    return UnfoldedStrip(float(width), total, tuple(marks), a0, a1)


def refold(strip: UnfoldedStrip) -> list:
    """Fold the flat strip back up; returns the folded center-line points.

    The first point is the start cut at the origin and the first edge runs
    along +x. Each crease, already carried along by the earlier folds,
    reflects every later point.
    """
    pts = [Point2(0.0, 0.0)]
    pts += [Point2(m.position, 0.0) for m in strip.fold_marks]
    pts.append(Point2(strip.total_length, 0.0))
    lines = [
        DirLine(Point2(m.position, 0.0), Point2(math.cos(0.5 * m.angle), math.sin(0.5 * m.angle)))
        for m in strip.fold_marks
    ]
    for k, mirror in enumerate(lines):
        for j in range(k + 2, len(pts)):
            pts[j] = reflect_across(pts[j], mirror)
        for j in range(k + 1, len(lines)):
            o = reflect_across(lines[j].origin, mirror)
            tip = reflect_across(lines[j].origin + lines[j].direction, mirror)
            lines[j] = DirLine(o, unit(tip - o))
    return pts
