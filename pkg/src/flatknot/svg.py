"""SVG drawings of folded ribbons and of unfolded strips.

Model coordinates are y-up; the documents are y-down, so every y is negated
once on output and nowhere else.
"""

from __future__ import annotations

import xml.etree.ElementTree as ET

from .geom import Point2, cross
from .ribbon import RibbonLayout, Weaving
from .unfold import UnfoldedStrip

__all__ = ["render_svg", "render_unfolded_svg", "MARGIN"]

MARGIN = 0.05

_SVG_NS = "http://www.w3.org/2000/svg"

STYLE = {
    "strip": {"fill": "#f2c14e", "stroke": "#5a4a1a", "stroke-linejoin": "round"},
    "over": {"fill": "#f2c14e", "stroke": "none"},
    "edge": {"stroke": "#5a4a1a", "fill": "none"},
    "crease": {"stroke": "#b03a2e", "fill": "none"},
    "cut": {"stroke": "#1f4e79", "fill": "none"},
    "mark": {"stroke": "#b03a2e", "fill": "none", "stroke-dasharray": "4 3"},
    "label": {"fill": "#222222", "text-anchor": "middle"},
}


def _fmt(v: float) -> str:
    return format(v + 0.0, ".12g")


def _xy(p) -> tuple:
    return _fmt(p[0]), _fmt(-p[1])


def _points(poly) -> str:
    return " ".join("%s,%s" % _xy(p) for p in poly)


class _Doc:
    def __init__(self, points, stroke_scale):
        xs = [p[0] for p in points]
        ys = [-p[1] for p in points]
        x0, x1, y0, y1 = min(xs), max(xs), min(ys), max(ys)
        span = max(x1 - x0, y1 - y0, 1e-12)
        pad = MARGIN * span
        self.stroke = stroke_scale * span
        self.root = ET.Element("svg", {
            "xmlns": _SVG_NS,
            "version": "1.1",
            "viewBox": " ".join(_fmt(v) for v in (x0 - pad, y0 - pad,
                                                  x1 - x0 + 2 * pad, y1 - y0 + 2 * pad)),
        })

    def group(self, cls):
        return ET.SubElement(self.root, "g", {"class": cls})

    def add(self, parent, tag, cls, **attrs):
        style = dict(STYLE.get(cls, {}))
        if style.get("stroke", "none") != "none":
            style["stroke-width"] = _fmt(self.stroke)
        attrs = {k.replace("_", "-"): str(v) for k, v in attrs.items()}
        attrs["class"] = cls
        attrs.update(style)
        return ET.SubElement(parent, tag, attrs)

    def line(self, parent, cls, a, b, **attrs):
        (x1, y1), (x2, y2) = _xy(a), _xy(b)
        return self.add(parent, "line", cls, x1=x1, y1=y1, x2=x2, y2=y2, **attrs)

    def text(self) -> str:
        ET.indent(self.root)
        return ET.tostring(self.root, encoding="unicode", xml_declaration=True) + "\n"


def _clip(subject, clip):
    """Sutherland-Hodgman: convex CCW ``clip`` applied to polygon ``subject``."""
    out = list(subject)
    m = len(clip)
    for k in range(m):
        a, b = clip[k], clip[(k + 1) % m]
        e = (b[0] - a[0], b[1] - a[1])

        def side(p):
            return cross(e, (p[0] - a[0], p[1] - a[1]))

        src, out = out, []
        for n, p in enumerate(src):
            q = src[n - 1]
            sp, sq = side(p), side(q)
            if sp >= 0.0:
                if sq < 0.0:
                    out.append(_lerp(q, p, sq / (sq - sp)))
                out.append(p)
            elif sq >= 0.0:
                out.append(_lerp(q, p, sq / (sq - sp)))
        if not out:
            break
    return out


def _lerp(p, q, t):
    return (p[0] + t * (q[0] - p[0]), p[1] + t * (q[1] - p[1]))


def _clip_segment(a, b, poly):
    """Part of segment ``ab`` inside convex CCW ``poly``, or None."""
    t0, t1 = 0.0, 1.0
    d = (b[0] - a[0], b[1] - a[1])
    m = len(poly)
    for k in range(m):
        p, q = poly[k], poly[(k + 1) % m]
        e = (q[0] - p[0], q[1] - p[1])
        f0 = cross(e, (a[0] - p[0], a[1] - p[1]))
        df = cross(e, d)
        if df == 0.0:
            if f0 < 0.0:
                return None
            continue
        t = -f0 / df
        if df > 0.0:
            t0 = max(t0, t)
        else:
            t1 = min(t1, t)
        if t0 >= t1:
            return None
    return _lerp(a, b, t0), _lerp(a, b, t1)


def render_svg(layout: RibbonLayout, weaving: Weaving = Weaving()) -> str:
    """The folded ribbon: strips, creases, cuts and over/under at crossings.

    Strips are drawn in core order. At each crossing the over strip's share
    of the overlap is then drawn again on top, with its long edges stroked,
    which breaks the under strand there.
    """
    strips = {s.edge_index: [tuple(c) for c in s.corners] for s in layout.strips}
    pts = [c for poly in strips.values() for c in poly]
    doc = _Doc(pts, 0.004)
    g = doc.group("strips")
    for k, poly in sorted(strips.items()):
        doc.add(g, "polygon", "strip", points=_points(poly), data_edge=k)

    g = doc.group("crossings")
    for c in weaving.crossings:
        over, under = strips.get(c.over), strips.get(c.under)
        if over is None or under is None:
            continue
        patch = _clip(over, under)
        if len(patch) < 3:
            continue
        cg = ET.SubElement(g, "g", {"class": "crossing", "data-over": str(c.over),
                                    "data-under": str(c.under)})
        doc.add(cg, "polygon", "over", points=_points(patch))
        # long edges of the over strip: corners 0-1 (right) and 2-3 (left)
        for a, b in ((over[0], over[1]), (over[2], over[3])):
            seg = _clip_segment(a, b, under)
            if seg is not None:
                doc.line(cg, "edge", *seg)

    g = doc.group("creases")
    for cr in layout.creases:
        doc.line(g, "crease", cr.segment.a, cr.segment.b, data_vertex=cr.vertex_index)
    g = doc.group("cuts")
    for cut in layout.cuts:
        doc.line(g, "cut", cut.a, cut.b)
    return doc.text()


def render_unfolded_svg(strip: UnfoldedStrip) -> str:
    """The flat strip with its cut ends, dashed fold marks and segment lengths."""
    chords = strip.crease_segments()
    outline = [chords[0][0], chords[-1][0], chords[-1][1], chords[0][1]]
    h = 0.5 * strip.width
    doc = _Doc(outline + [Point2(0.0, -1.5 * h)], 0.002)
    g = doc.group("strip")
    doc.add(g, "polygon", "strip", points=_points(outline))
    g = doc.group("cuts")
    for a, b in (chords[0], chords[-1]):
        doc.line(g, "cut", a, b)
    g = doc.group("folds")
    for (a, b), mark in zip(chords[1:-1], strip.fold_marks):
        doc.line(g, "mark", a, b, data_position=_fmt(mark.position),
                 data_angle=_fmt(mark.angle))
    g = doc.group("labels")
    xs = [0.0, *(m.position for m in strip.fold_marks), strip.total_length]
    size = 0.35 * h
    for x0, x1, length in zip(xs, xs[1:], strip.segment_lengths):
        lx, ly = _xy((0.5 * (x0 + x1), -1.25 * h))
        label = doc.add(g, "text", "label", x=lx, y=ly, font_size=_fmt(size))
        label.text = format(length, ".6g")
    return doc.text()
