"""Pentagon trefoil and hexagon figure-eight ribbons with their closed forms."""

from __future__ import annotations

import math
from dataclasses import dataclass

from .geom import Point2
from .ribbon import CoreCurve, Truncation, alternating_weaving

__all__ = [
    "PHI",
    "PentagonParams",
    "HexagonParams",
    "ExpectedMeasure",
    "regular_pentagon",
    "pentagon_trefoil",
    "hexagon_figure_eight",
    "hexagon_corners",
    "expected_ratio",
    "KNOTS",
]

PHI = (1.0 + math.sqrt(5.0)) / 2.0

KNOTS = ("trefoil", "figure_eight")


@dataclass(frozen=True)
class PentagonParams:
    """Regular pentagon with side ``edge`` and diagonal ``chord = PHI * edge``."""

    edge: float = 1.0

    def __post_init__(self):
        if not self.edge > 0:
            raise ValueError("edge must be positive")

    @property
    def chord(self) -> float:
        return PHI * self.edge

    @property
    def width(self) -> float:
        # trapezoid with parallel sides l, d and legs l: W^2 + (d - l)^2 / 4 = l^2
        l, d = self.edge, self.chord
        return math.sqrt(3 * l * l - d * d + 2 * l * d) / 2

    @property
    def length(self) -> float:
        return 2 * (self.edge + self.chord)

    @property
    def circumradius(self) -> float:
        return self.edge / (2 * math.sin(math.pi / 5))


@dataclass(frozen=True)
class HexagonParams:
    a: float = 3.0

    def __post_init__(self):
        if not self.a > 0:
            raise ValueError("a must be positive")

    @property
    def b(self) -> float:
        return math.sqrt(5.0 / 27.0) * self.a

    @property
    def c(self) -> float:
        return self.a / 3.0

    @property
    def length(self) -> float:
        a, b = self.a, self.b
        return 4 * math.sqrt(a * a + 9 * b * b) + math.sqrt(4 * a * a + 4 * b * b)

    @property
    def width(self) -> float:
        return self.a * math.sqrt(10.0) / 3.0


@dataclass(frozen=True)
class ExpectedMeasure:
    knot: str
    ratio_closed_form: float
    length_formula_value: float
    width_formula_value: float
    closed_forms: tuple = ()


def regular_pentagon(edge: float = 1.0) -> list:
    """Vertices of the regular pentagon with one vertex straight up, CCW."""
    r = PentagonParams(edge).circumradius
    return [
        Point2(r * math.cos(math.pi / 2 + 2 * math.pi * k / 5),
               r * math.sin(math.pi / 2 + 2 * math.pi * k / 5))
        for k in range(5)
    ]


def pentagon_trefoil(edge: float = 1.0) -> tuple:
    """Trefoil ribbon folded into a regular pentagon of side ``edge``.

    The center line is the light path that enters through one side, bounces
    off three others and leaves through the fifth: it joins the midpoints of
    every second side. At the maximal width the three creases and the two
    flush cuts are exactly the pentagon's sides.
    """
    params = PentagonParams(edge)
    p = regular_pentagon(params.edge)
    mids = [(p[k] + p[(k + 1) % 5]) * 0.5 for k in range(5)]
    core = CoreCurve([mids[k % 5] for k in (0, 2, 4, 6, 8)], closed=False,
                     truncation=Truncation(0.0, 0.0, "flush"))
    return core, alternating_weaving(core)


def hexagon_figure_eight(a: float = 3.0) -> tuple:
    """Figure-eight ribbon folded into the semi-regular hexagon.

    Center line ``(a, b), (0, -2b), (-a, b), (a, -b), (0, 2b), (-a, -b)`` with
    ``b = sqrt(5/27) a``, cut flush with the hexagon sides at both ends.
    """
    h = HexagonParams(a)
    a, b = h.a, h.b
    verts = [(a, b), (0.0, -2 * b), (-a, b), (a, -b), (0.0, 2 * b), (-a, -b)]
    core = CoreCurve(verts, closed=False, truncation=Truncation(0.0, 0.0, "flush"))
    return core, alternating_weaving(core)


def hexagon_corners(a: float = 3.0) -> list:
    """Corners of the hexagon traced by the figure-eight at maximal width, CCW."""
    h = HexagonParams(a)
    a, b = h.a, h.b
    return [Point2(4 * a / 3, 0.0), Point2(2 * a / 3, 2 * b), Point2(-2 * a / 3, 2 * b),
            Point2(-4 * a / 3, 0.0), Point2(-2 * a / 3, -2 * b), Point2(2 * a / 3, -2 * b)]


def expected_ratio(knot: str, scale: float = 1.0) -> ExpectedMeasure:
    """Conjectured minimal length-to-width ratio with its closed forms.

    ``scale`` is the pentagon side for the trefoil and ``a`` for the
    figure-eight; it only affects the length and width values.
    """
    if knot == "trefoil":
        p = PentagonParams(scale)
        forms = (
            4 * (PHI + 1) / math.sqrt(2 + PHI),
            4 / math.sqrt(7 - 4 * PHI),
            4 / math.sqrt(5 - 2 * math.sqrt(5)),
        )
        return ExpectedMeasure(knot, forms[1], p.length, p.width, forms)
    if knot in ("figure_eight", "figure8"):
        h = HexagonParams(scale)
        forms = (
            32 / math.sqrt(15),
            (32 / 3) * math.sqrt(2 / 3) * 3 / math.sqrt(10),
        )
        return ExpectedMeasure("figure_eight", forms[0], h.length, h.width, forms)
    raise ValueError(f"unknown knot {knot!r}; expected one of {KNOTS}")
