"""Derivative-free search for ribbons with a smaller length-to-width ratio.

The search moves core vertices while keeping the crossing combinatorics and
the weaving fixed, so every result is evidence about one diagram only and says
nothing about other ways of folding the same knot.

Similarity is gauged away by pinning vertex 0 at the origin and vertex 1 at
``(1, 0)``; the free variables are the remaining ``2 (n - 2)`` coordinates.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass
from typing import Optional

import numpy as np
from scipy.optimize import minimize
from sklearn.base import BaseEstimator

from .exceptions import FlatKnotError, NoPositiveWidth
from .ribbon import (
    BISECT_REL_TOL,
    CoreCurve,
    Truncation,
    core_length,
    crossing_signature,
    max_width,
)
from .validation import check_core, check_scalar, check_weaving

__all__ = [
    "SCOPE_NOTE",
    "OptimizeOptions",
    "OptimizeReport",
    "LocalMinReport",
    "RatioMinimizer",
    "minimize_ratio",
    "local_min_check",
    "to_gauge",
    "length_mode",
]

# bisection tolerance inside the search; reported ratios are recomputed at
# the library default
SEARCH_REL_TOL = 1e-7
# a cycle gaining less than this (relative) is a stall; smaller gains are
# within the bisection noise of the search
STALL_REL = 1e-7
# so is a cycle whose incumbent moved less than this, in gauge units
MIN_STEP = 1e-6

SCOPE_NOTE = (
    "fixed-combinatorics evidence only: vertex positions vary, crossing pattern "
    "and weaving do not; not a proof of global minimality"
)


@dataclass(frozen=True)
class OptimizeOptions:
    """Settings for :func:`minimize_ratio`.

    ``max_evals`` is the objective budget of each restart.
    """

    max_evals: int = 2500
    restarts: int = 3
    simplex_scale: float = 0.05
    penalty_weight: float = 10.0
    seed: int = 0
    gauge: bool = True

    def __post_init__(self):
        check_scalar(self.max_evals, "max_evals", int, 1)
        check_scalar(self.restarts, "restarts", int, 1)
        check_scalar(self.simplex_scale, "simplex_scale", min_val=0.0, include_min=False)
        check_scalar(self.penalty_weight, "penalty_weight", min_val=0.0, include_min=False)
        check_scalar(self.seed, "seed", int, 0)


@dataclass(frozen=True)
class OptimizeReport:
    best_core: CoreCurve
    best_ratio: float
    evals_used: int
    converged: bool
    trace: tuple
    restart_ratios: tuple = ()
    start_ratio: float = math.nan
    scope: str = SCOPE_NOTE


@dataclass(frozen=True)
class LocalMinReport:
    base_ratio: float
    min_perturbed_ratio: float
    violations: int
    samples: int
    rejected: int
    scope: str = SCOPE_NOTE


def length_mode(core: CoreCurve) -> str:
    return "closed" if core.closed else "truncated"


def to_gauge(core: CoreCurve) -> CoreCurve:
    """Similar copy with vertex 0 at the origin and vertex 1 at ``(1, 0)``."""
    v = core.vertices
    d = v[1] - v[0]
    s = math.hypot(d.x, d.y)
    c, sn = d.x / s, d.y / s
    out = [(0.0, 0.0), (1.0, 0.0)]
    for p in v[2:]:
        x, y = p.x - v[0].x, p.y - v[0].y
        out.append(((c * x + sn * y) / s, (-sn * x + c * y) / s))
    tr = core.truncation
    if tr is not None:
        tr = Truncation(tr.start_offset / s, tr.end_offset / s, tr.cut)
    return CoreCurve(out, core.closed, tr)


class _Objective:
    """Penalized ratio with an evaluation log of improvements."""

    def __init__(self, template, weaving, pinned, penalty_weight, ceiling,
                 rel_tol=SEARCH_REL_TOL, warm=True):
        self.template = template
        self.weaving = weaving
        self.pinned = pinned
        self.signature = crossing_signature(template)
        self.mode = length_mode(template)
        self.penalty_weight = penalty_weight
        self.ceiling = ceiling
        self.evals = 0
        self.best = math.inf
        self.best_core = None
        self.trace = []
        self.width_hint = None
        self.bracket = 1e-2
        self.rel_tol = rel_tol
        self.warm = warm

    def core_at(self, x) -> CoreCurve:
        pts = list(self.pinned) + [(x[k], x[k + 1]) for k in range(0, len(x), 2)]
        return self.template.with_vertices(pts)

    def _penalty(self, violation: float) -> float:
        return self.ceiling + self.penalty_weight * (1.0 + violation)

    def ratio_at(self, x) -> Optional[tuple]:
        """``(ratio, core)`` or ``(penalty, None)``."""
        try:
            core = self.core_at(x)
        except (FlatKnotError, ValueError):
            return self._penalty(len(self.signature)), None
        sig = crossing_signature(core)
        if sig != self.signature:
            miss = sum(a != b for a, b in zip(sig, self.signature))
            return self._penalty(miss), None
        try:
            width = max_width(core, self.weaving, rel_tol=self.rel_tol,
                              hint=self.width_hint, bracket=self.bracket)
        except NoPositiveWidth:
            return self._penalty(len(self.signature)), None
        if self.warm:
            # bracket the next bisection by twice the last relative change
            if self.width_hint is not None:
                change = abs(width / self.width_hint - 1.0)
                self.bracket = min(1e-2, max(2.0 * change, 1e-6))
            self.width_hint = width
        return core_length(core, self.mode) / width, core

    def __call__(self, x) -> float:
        self.evals += 1
        value, core = self.ratio_at(x)
        if core is not None and value < self.best:
            self.best = value
            self.best_core = core
            self.trace.append((self.evals, value))
        return value


def _jitter(rng, n_points: int, radius: float) -> np.ndarray:
    r = radius * np.sqrt(rng.uniform(size=n_points))
    a = rng.uniform(0.0, 2 * math.pi, size=n_points)
    return np.column_stack([r * np.cos(a), r * np.sin(a)]).ravel()


class RatioMinimizer(BaseEstimator):
    """Nelder-Mead minimizer of length/width over core vertex positions.

    Parameters
    ----------
    max_evals : int
        Objective evaluations allowed per restart.
    restarts : int
        Independent runs. Run 0 starts at the given core, later runs at a
        copy jittered by ``simplex_scale`` (in gauge units). The best run
        wins; ties go to the lower index.
    simplex_scale : float
        Edge length of the initial simplex, in units of the first core edge.
    penalty_weight : float
        Added per unit of violation to candidates that change the crossing
        pattern, break a core invariant or admit no positive width.
    seed : int
        Seed of the restart jitter and simplex orientation.
    gauge : bool
        Pin vertices 0 and 1 (True) or let every vertex move.

    Attributes
    ----------
    best_core_ : CoreCurve
    best_ratio_ : float
    report_ : OptimizeReport
    """

    CYCLE_EVALS = 30

    def __init__(self, max_evals=2500, restarts=3, simplex_scale=0.05,
                 penalty_weight=10.0, seed=0, gauge=True):
        self.max_evals = max_evals
        self.restarts = restarts
        self.simplex_scale = simplex_scale
        self.penalty_weight = penalty_weight
        self.seed = seed
        self.gauge = gauge

    def _options(self) -> OptimizeOptions:
        return OptimizeOptions(**self.get_params())

    def fit(self, core, weaving=None):
        opts = self._options()
        core = check_core(core)
        weaving = check_weaving(core, weaving)
        start = to_gauge(core)
        mode = length_mode(start)
        start_ratio = core_length(start, mode) / max_width(start, weaving)

        n_pinned = 2 if opts.gauge else 0
        pinned = start.vertices[:n_pinned]
        x_start = np.array([c for p in start.vertices[n_pinned:] for c in p])
        ceiling = start_ratio

        rng = np.random.default_rng(opts.seed)
        runs = []
        for r in range(opts.restarts):
            x0 = x_start.copy()
            if r > 0:
                x0 = x0 + _jitter(rng, len(x0) // 2, opts.simplex_scale)
            obj = _Objective(start, weaving, pinned, opts.penalty_weight, ceiling)
            converged = self._run(obj, x0, opts, rng)
            runs.append((obj, converged))

        best_idx = min(range(len(runs)), key=lambda k: (runs[k][0].best, k))
        best_obj, converged = runs[best_idx]
        best_core = best_obj.best_core
        best_ratio = math.inf
        if best_core is not None:
            best_ratio = core_length(best_core, mode) / max_width(best_core, weaving)
        if best_ratio > start_ratio:
            best_core, best_ratio = start, start_ratio
        self.best_core_ = best_core
        self.best_ratio_ = best_ratio
        self.report_ = OptimizeReport(
            best_core=best_core,
            best_ratio=best_ratio,
            evals_used=sum(o.evals for o, _ in runs),
            converged=converged,
            trace=tuple(best_obj.trace),
            restart_ratios=tuple(o.best for o, _ in runs),
            start_ratio=start_ratio,
        )
        return self

    def _run(self, obj, x0, opts, rng) -> bool:
        """Short Nelder-Mead cycles, each restarted at the incumbent with a
        randomly rotated simplex sized to the previous cycle's progress."""
        dim = len(x0)
        x = np.asarray(x0, dtype=float)
        scale = opts.simplex_scale
        obj(x)
        stalls = 0
        while obj.evals < opts.max_evals:
            before = obj.best
            q, _ = np.linalg.qr(rng.normal(size=(dim, dim)))
            res = minimize(
                obj, x, method="Nelder-Mead",
                options={
                    "initial_simplex": np.vstack([x, x + scale * q.T]),
                    "maxfev": min(self.CYCLE_EVALS * dim, opts.max_evals - obj.evals),
                    "xatol": 1e-10,
                    "fatol": 1e-14,
                    "adaptive": dim > 4,
                },
            )
            x_new = self._free_coords(obj)
            step = float(np.linalg.norm(x_new - x))
            x = x_new
            if before - obj.best <= STALL_REL * obj.best or step < MIN_STEP:
                stalls += 1
                scale *= 0.25
                if stalls >= 3 or scale < 1e-9:
                    return bool(res.success)
            else:
                stalls = 0
                scale = min(opts.simplex_scale, max(2.0 * step, 1e-7))
        return False

    @staticmethod
    def _free_coords(obj) -> np.ndarray:
        core = obj.best_core if obj.best_core is not None else obj.template
        return np.array([c for p in core.vertices[len(obj.pinned):] for c in p])


def minimize_ratio(core, weaving, opts: Optional[OptimizeOptions] = None) -> OptimizeReport:
    """Minimize length/width over vertex positions at fixed combinatorics."""
    opts = opts or OptimizeOptions()
    return RatioMinimizer(**asdict(opts)).fit(core, weaving).report_


def local_min_check(core, weaving, epsilon: float, trials: int, seed: int = 0) -> LocalMinReport:
    """Sample random perturbations of the free vertices and count improvements.

    Vertices 0 and 1 stay put; every other vertex moves by an independent
    offset drawn uniformly from the disk of radius ``epsilon``. Samples that
    change the crossing pattern or lose admissibility are rejected.
    """
    core = check_core(core)
    weaving = check_weaving(core, weaving)
    check_scalar(epsilon, "epsilon", min_val=0.0)
    check_scalar(trials, "trials", int, 0)
    mode = length_mode(core)
    base = core_length(core, mode) / max_width(core, weaving)
    obj = _Objective(core, weaving, core.vertices[:2], 1.0, base,
                     rel_tol=BISECT_REL_TOL, warm=False)
    x0 = np.array([c for p in core.vertices[2:] for c in p])
    rng = np.random.default_rng(seed)
    best = math.inf
    violations = rejected = 0
    for _ in range(trials):
        value, cand = obj.ratio_at(x0 + _jitter(rng, len(x0) // 2, epsilon))
        if cand is None:
            rejected += 1
            continue
        best = min(best, value)
        if value < base - 1e-9:
            violations += 1
    return LocalMinReport(base, best, violations, trials - rejected, rejected)
