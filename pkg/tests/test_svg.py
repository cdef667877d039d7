import math
import xml.etree.ElementTree as ET

import pytest
from scipy.spatial import ConvexHull

from flatknot import (
    CoreCurve,
    Weaving,
    hexagon_corners,
    layout,
    max_width,
    regular_pentagon,
    render_svg,
    render_unfolded_svg,
    unfold,
)
from flatknot.geom import cross

NS = {"s": "http://www.w3.org/2000/svg"}


def parse(text):
    return ET.fromstring(text.encode("utf-8"))


def model(x, y):
    # undo the single y-flip
    return float(x), -float(y)


def lines(root, cls):
    return [(model(e.get("x1"), e.get("y1")), model(e.get("x2"), e.get("y2")))
            for e in root.iterfind(".//s:line", NS) if e.get("class") == cls]


def polygons(root, cls):
    out = []
    for e in root.iterfind(".//s:polygon", NS):
        if e.get("class") == cls:
            out.append([model(*p.split(",")) for p in e.get("points").split()])
    return out


def ribbon_svg(cw):
    core, w = cw
    return parse(render_svg(layout(core, max_width(core, w)), w))


def test_trefoil_mirrors_form_pentagon(trefoil):
    root = ribbon_svg(trefoil)
    segs = lines(root, "crease") + lines(root, "cut")
    assert len(lines(root, "crease")) == 3 and len(lines(root, "cut")) == 2
    ends = [p for s in segs for p in s]
    for q in regular_pentagon(1.0):
        assert min(math.dist(p, q) for p in ends) < 1e-6
    for a, b in segs:
        assert math.dist(a, b) == pytest.approx(1.0, abs=1e-6)


def test_single_fold_no_gap():
    core = CoreCurve([(-1, 0), (0, 0), (0, 1)])
    root = parse(render_svg(layout(core, 0.1), Weaving()))
    strips = polygons(root, "strip")
    creases = lines(root, "crease")
    assert len(strips) == 2 and len(creases) == 1
    assert root.find(".//s:g[@class='crossing']", NS) is None
    # both strips carry the crease as a full edge
    a, b = creases[0]
    for poly in strips:
        for end in (a, b):
            assert min(math.dist(end, p) for p in poly) < 1e-9


def test_figure_eight_outline(figure_eight):
    root = ribbon_svg(figure_eight)
    pts = [p for poly in polygons(root, "strip") for p in poly]
    hull = ConvexHull(pts)
    corners = [pts[k] for k in hull.vertices]
    # collapse duplicates from coincident strip corners
    uniq = []
    for p in corners:
        if all(math.dist(p, q) > 1e-6 for q in uniq):
            uniq.append(p)
    assert len(uniq) == 6
    for q in hexagon_corners(3.0):
        assert min(math.dist(p, q) for p in uniq) < 1e-6
    sides = [(uniq[k], uniq[(k + 1) % 6]) for k in range(6)]
    parallel = 0
    for k in range(3):
        (a, b), (c, d) = sides[k], sides[k + 3]
        u, v = (b[0] - a[0], b[1] - a[1]), (d[0] - c[0], d[1] - c[1])
        parallel += abs(cross(u, v)) < 1e-6 * math.hypot(*u) * math.hypot(*v)
    assert parallel >= 1


def test_crossings_drawn_over(trefoil, figure_eight):
    for cw in (trefoil, figure_eight):
        root = ribbon_svg(cw)
        groups = root.findall(".//s:g[@class='crossing']", NS)
        assert len(groups) == len(cw[1].crossings)
        for g, c in zip(groups, cw[1].crossings):
            assert int(g.get("data-over")) == c.over
            assert len(g.findall("s:polygon", NS)) == 1
        # over-patches come after every strip in document order
        order = [e.get("class") for e in root.iter() if e.get("class") in ("strip", "over")]
        assert order.index("over") > max(i for i, k in enumerate(order) if k == "strip")


def test_view_box_margin(trefoil):
    root = ribbon_svg(trefoil)
    x, y, w, h = map(float, root.get("viewBox").split())
    pts = [p for poly in polygons(root, "strip") for p in poly]
    xs = [p[0] for p in pts]
    ys = [-p[1] for p in pts]
    span = max(max(xs) - min(xs), max(ys) - min(ys))
    assert x == pytest.approx(min(xs) - 0.05 * span, abs=1e-9)
    assert y == pytest.approx(min(ys) - 0.05 * span, abs=1e-9)
    assert x + w == pytest.approx(max(xs) + 0.05 * span, abs=1e-9)


def test_unfolded(trefoil):
    core, w = trefoil
    strip = unfold(core, max_width(core, w))
    root = parse(render_unfolded_svg(strip))
    assert len(lines(root, "mark")) == 3
    assert len(lines(root, "cut")) == 2
    labels = [float(t.text) for t in root.iterfind(".//s:text", NS)]
    assert labels == pytest.approx(strip.segment_lengths, rel=1e-5)
    (outline,) = polygons(root, "strip")
    ys = sorted({round(p[1], 9) for p in outline})
    assert ys == pytest.approx([-strip.width / 2, strip.width / 2])
