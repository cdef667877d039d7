"""Flat knotted ribbons: mirror folds, maximal widths and length/width ratios."""

from .constructions import (
    PHI,
    expected_ratio,
    hexagon_corners,
    hexagon_figure_eight,
    pentagon_trefoil,
    regular_pentagon,
)
from .corefile import parse_core_file, read_core, serialize_core, write_core
from .exceptions import (
    CollinearOverlap,
    FlatKnotError,
    GeometryError,
    InvalidCore,
    InvalidTruncation,
    InvalidWeaving,
    ModeMismatch,
    NoPositiveWidth,
    ParseError,
    ValidationError,
    ZeroTurn,
)
from .geom import DirLine, LineSeg, Point2, bisector_mirror, intersect_segments, reflect_across
from .optimize import (
    SCOPE_NOTE,
    OptimizeOptions,
    OptimizeReport,
    RatioMinimizer,
    local_min_check,
    minimize_ratio,
)
from .ribbon import (
    CoreCurve,
    Crossing,
    RibbonLayout,
    RibbonMeasure,
    Truncation,
    Weaving,
    admissible,
    alternating_weaving,
    core_length,
    creases,
    layout,
    max_width,
    ratio,
)
from .svg import render_svg, render_unfolded_svg
from .unfold import FoldMark, UnfoldedStrip, refold, unfold

__version__ = "0.1.0"
