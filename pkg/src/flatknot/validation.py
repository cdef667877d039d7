"""Input checks shared by the estimator API and the CLI."""

from __future__ import annotations

import math
import numbers

import numpy as np

from .exceptions import InvalidCore
from .ribbon import CoreCurve, Truncation, Weaving


def check_core(core, closed: bool = False) -> CoreCurve:
    """Return a CoreCurve from a CoreCurve or an ``(n, 2)`` array of vertices.

    An open array core is cut perpendicular at its end vertices.
    """
    if isinstance(core, CoreCurve):
        return core
    arr = np.asarray(core, dtype=float)
    if arr.ndim != 2 or arr.shape[1] != 2:
        raise InvalidCore(f"expected an (n, 2) array of vertices, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise InvalidCore("vertex coordinates must be finite")
    return CoreCurve([tuple(row) for row in arr], closed=closed,
                     truncation=None if closed else Truncation())


def check_weaving(core: CoreCurve, weaving=None) -> Weaving:
    """Coerce ``weaving`` (Weaving or iterable of (i, j, over)) and match it to ``core``."""
    if weaving is None:
        weaving = Weaving()
    elif not isinstance(weaving, Weaving):
        weaving = Weaving(tuple(tuple(c) for c in weaving))
    return weaving.check(core)


def check_scalar(x, name, target_type=numbers.Real, min_val=None, include_min=True):
    if isinstance(x, bool) or not isinstance(x, target_type):
        raise TypeError(f"{name} must be {target_type.__name__}, got {type(x).__name__}")
    if isinstance(x, numbers.Real) and not math.isfinite(x):
        raise ValueError(f"{name} must be finite")
    if min_val is not None:
        bad = x < min_val if include_min else x <= min_val
        if bad:
            op = ">=" if include_min else ">"
            raise ValueError(f"{name} must be {op} {min_val}, got {x}")
    return x
