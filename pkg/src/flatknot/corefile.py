"""JSON core files: one ribbon core, its truncation and its weaving.

A file looks like::

    {
      "version": 1,
      "vertices": [[0.0, 0.0], [1.0, 0.0], ...],
      "closed": false,
      "truncation": {"start_offset": 0.0, "end_offset": 0.0, "cut": "flush"},
      "crossings": [{"i": 0, "j": 2, "over": 0}, ...],
      "metadata": {"name": "trefoil", "notes": "..."}
    }

``truncation`` may be null, or a two-element list ``[start, end]`` for
perpendicular cuts. ``metadata`` is optional. Crossings are declared, not
inferred, and must match the geometric crossings of the vertices exactly.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from pathlib import Path

from .exceptions import FlatKnotError, ParseError, ValidationError
from .ribbon import CUT_MODES, CoreCurve, Crossing, Truncation, Weaving

__all__ = [
    "FORMAT_VERSION",
    "CoreDocument",
    "parse_core_document",
    "parse_core_file",
    "serialize_core",
    "read_core",
    "write_core",
]

FORMAT_VERSION = 1

_KEYS = {"version", "vertices", "closed", "truncation", "crossings", "metadata"}


@dataclass(frozen=True)
class CoreDocument:
    core: CoreCurve
    weaving: Weaving
    metadata: dict = field(default_factory=dict)


def _number(value, where) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ValidationError(f"expected a number, got {json.dumps(value)}", where)
    value = float(value)
    if not math.isfinite(value):
        raise ValidationError("number must be finite", where)
    return value


def _index(value, where) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise ValidationError(f"expected an integer, got {json.dumps(value)}", where)
    return value


def _vertices(raw) -> list:
    if not isinstance(raw, list):
        raise ValidationError("expected a list of [x, y] pairs", "vertices")
    out = []
    for k, pt in enumerate(raw):
        where = f"vertices[{k}]"
        if not isinstance(pt, list) or len(pt) != 2:
            raise ValidationError("expected an [x, y] pair", where)
        out.append((_number(pt[0], f"{where}[0]"), _number(pt[1], f"{where}[1]")))
    return out


def _truncation(raw):
    if raw is None:
        return None
    if isinstance(raw, list):
        if len(raw) != 2:
            raise ValidationError("expected [start_offset, end_offset]", "truncation")
        raw = {"start_offset": raw[0], "end_offset": raw[1]}
    if not isinstance(raw, dict):
        raise ValidationError("expected an object, a pair or null", "truncation")
    extra = set(raw) - {"start_offset", "end_offset", "cut"}
    if extra:
        raise ValidationError(f"unknown keys {sorted(extra)}", "truncation")
    start = _number(raw.get("start_offset", 0.0), "truncation.start_offset")
    end = _number(raw.get("end_offset", 0.0), "truncation.end_offset")
    cut = raw.get("cut", "perpendicular")
    if cut not in CUT_MODES:
        raise ValidationError(f"cut must be one of {CUT_MODES}, got {json.dumps(cut)}",
                              "truncation.cut")
    try:
        return Truncation(start, end, cut)
    except FlatKnotError as exc:
        raise ValidationError(str(exc), "truncation") from None


def _crossings(raw, core: CoreCurve) -> Weaving:
    if not isinstance(raw, list):
        raise ValidationError("expected a list of {i, j, over} objects", "crossings")
    geometric = {(i, j) for i, j, _ in core.crossings}
    seen = {}
    entries = []
    for k, c in enumerate(raw):
        where = f"crossings[{k}]"
        if isinstance(c, list) and len(c) == 3:
            c = dict(zip(("i", "j", "over"), c))
        if not isinstance(c, dict) or set(c) != {"i", "j", "over"}:
            raise ValidationError("expected an object with keys i, j, over", where)
        i, j, over = (_index(c[key], f"{where}.{key}") for key in ("i", "j", "over"))
        for key, e in (("i", i), ("j", j)):
            if not 0 <= e < core.n_edges:
                raise ValidationError(f"edge {e} out of range 0..{core.n_edges - 1}",
                                      f"{where}.{key}")
        if over not in (i, j):
            raise ValidationError(f"over edge {over} is not {i} or {j}", f"{where}.over")
        pair = (min(i, j), max(i, j))
        if pair in seen:
            raise ValidationError(f"duplicate of crossings[{seen[pair]}]", where)
        seen[pair] = k
        if pair not in geometric:
            raise ValidationError(f"edges {pair[0]} and {pair[1]} do not cross", where)
        entries.append(Crossing(pair[0], pair[1], over))
    missing = sorted(geometric - set(seen))
    if missing:
        raise ValidationError(f"no entry for crossing edge pairs {missing}", "crossings")
    return Weaving(tuple(entries))


def parse_core_document(text) -> CoreDocument:
    """Parse and validate a core file, keeping its metadata."""
    if isinstance(text, bytes):
        try:
            text = text.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise ParseError(f"not UTF-8: {exc.reason}") from None
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, exc.lineno, exc.colno) from None
    if not isinstance(doc, dict):
        raise ValidationError("top level must be a JSON object", "document")
    extra = set(doc) - _KEYS
    if extra:
        raise ValidationError(f"unknown keys {sorted(extra)}", "document")
    for key in ("version", "vertices"):
        if key not in doc:
            raise ValidationError("missing", key)
    if doc["version"] != FORMAT_VERSION or isinstance(doc["version"], bool):
        raise ValidationError(f"unsupported version {json.dumps(doc['version'])}", "version")
    closed = doc.get("closed", False)
    if not isinstance(closed, bool):
        raise ValidationError("expected true or false", "closed")
    vertices = _vertices(doc["vertices"])
    truncation = _truncation(doc.get("truncation"))
    try:
        core = CoreCurve(vertices, closed, truncation)
    except FlatKnotError as exc:
        field_ = "truncation" if "truncation" in type(exc).__name__.lower() else "vertices"
        raise ValidationError(str(exc), field_) from None
    weaving = _crossings(doc.get("crossings", []), core)
    metadata = doc.get("metadata") or {}
    if not isinstance(metadata, dict):
        raise ValidationError("expected an object", "metadata")
    return CoreDocument(core, weaving, metadata)


def parse_core_file(text) -> tuple:
    """``(CoreCurve, Weaving)`` from core-file text.

    Raises ParseError (with line and column) for malformed JSON and
    ValidationError (with the offending field) for anything else.
    """
    doc = parse_core_document(text)
    return doc.core, doc.weaving


def serialize_core(core: CoreCurve, weaving: Weaving, metadata=None) -> str:
    # json writes floats with repr, the shortest string that reads back to
    # the same double
    tr = core.truncation
    doc = {
        "version": FORMAT_VERSION,
        "vertices": [[p.x, p.y] for p in core.vertices],
        "closed": core.closed,
        "truncation": None if tr is None else {
            "start_offset": tr.start_offset, "end_offset": tr.end_offset, "cut": tr.cut,
        },
        "crossings": [{"i": c.i, "j": c.j, "over": c.over} for c in weaving.crossings],
    }
    if metadata:
        doc["metadata"] = dict(metadata)
    # each [x, y] pair and crossing object stays on one line
    parts = []
    for key, value in doc.items():
        if key in ("vertices", "crossings") and value:
            body = ",\n    ".join(json.dumps(v) for v in value)
            parts.append(f'  "{key}": [\n    {body}\n  ]')
        else:
            parts.append(f'  "{key}": {json.dumps(value)}')
    return "{\n" + ",\n".join(parts) + "\n}\n"


def read_core(path) -> CoreDocument:
    return parse_core_document(Path(path).read_bytes())


def write_core(path, core: CoreCurve, weaving: Weaving, metadata=None) -> None:
    Path(path).write_text(serialize_core(core, weaving, metadata), encoding="utf-8")
