"""Acceptance criteria, one test each, at the contract tolerances.

Every test appends a PASS or FAIL line to RESULTS; conftest prints them after
the run. Run directly with ``python3 tests/test_acceptance.py``.
"""

import json
import math
import sys
import time
import xml.etree.ElementTree as ET
from contextlib import contextmanager

import pytest

import test_properties
from test_constructions import hexagon_replay
from test_optimize import jittered

from flatknot import (
    PHI,
    SCOPE_NOTE,
    OptimizeOptions,
    hexagon_figure_eight,
    local_min_check,
    max_width,
    minimize_ratio,
    parse_core_file,
    pentagon_trefoil,
    refold,
    serialize_core,
    unfold,
)
from flatknot.cli import EXIT_VALIDATION, main
from flatknot.optimize import to_gauge

RESULTS = []

TREFOIL_CONSTANT = 5.5055276818846941528
FIGURE_EIGHT_CONSTANT = 8.26236447190916


@contextmanager
def criterion(number, title):
    info = {"detail": ""}
    t0 = time.perf_counter()
    try:
        yield info
    except BaseException as exc:
        dt = time.perf_counter() - t0
        msg = str(exc).strip().splitlines()[0] if str(exc).strip() else type(exc).__name__
        line = f"FAIL  [{number}] {title}: {msg} {info['detail']} ({dt:.2f}s)"
        RESULTS.append(line)
        print(line)
        raise
    dt = time.perf_counter() - t0
    line = f"PASS  [{number}] {title}: {info['detail']} ({dt:.2f}s)"
    RESULTS.append(line)
    print(line)


def sig_digits(x, ref):
    if x == ref:
        return math.inf
    return -math.log10(abs(x - ref) / abs(ref))


def cli_ratio(tmp_path, knot):
    path = tmp_path / f"{knot}.json"
    assert main(["builtin", knot, "--out", str(path)]) == 0
    return path


def printed_ratio(capsys, path):
    assert main(["ratio", str(path), "--mode", "truncated"]) == 0
    out = capsys.readouterr().out
    return float(out.strip().splitlines()[-1].split()[1])


def test_c1_trefoil_golden_number(tmp_path, capsys):
    with criterion(1, "trefoil L/W") as info:
        path = cli_ratio(tmp_path, "trefoil")
        t0 = time.perf_counter()
        r = printed_ratio(capsys, path)
        dt = time.perf_counter() - t0
        closed = 4 / math.sqrt(7 - 4 * PHI)
        digits = sig_digits(r, TREFOIL_CONSTANT)
        info["detail"] = f"printed {r!r}, {digits:.1f} digits, |r - 4/sqrt(7-4phi)| = {abs(r - closed):.1e}"
        assert digits >= 12
        assert abs(r - closed) < 1e-9
        assert dt < 1.0, f"runtime {dt:.2f}s"


def test_c2_figure_eight_golden_number(tmp_path, capsys):
    with criterion(2, "figure-eight L/W") as info:
        path = cli_ratio(tmp_path, "figure8")
        t0 = time.perf_counter()
        r = printed_ratio(capsys, path)
        dt = time.perf_counter() - t0
        digits = sig_digits(r, FIGURE_EIGHT_CONSTANT)
        info["detail"] = f"printed {r!r}, {digits:.1f} digits vs 8.26236447190916, 32/sqrt(15) = {32 / math.sqrt(15)!r}"
        assert digits >= 12
        assert abs(r - 32 / math.sqrt(15)) < 1e-9
        assert dt < 1.0, f"runtime {dt:.2f}s"


def test_c3_bisection_matches_formula():
    with criterion(3, "bisection width vs formula") as info:
        t0 = time.perf_counter()
        rows = []
        for core, weaving, formula in (
            (*pentagon_trefoil(1.0), math.sqrt(2 + PHI) / 2),
            (*pentagon_trefoil(2.5), 2.5 * math.sqrt(2 + PHI) / 2),
            (*hexagon_figure_eight(3.0), 3.0 * math.sqrt(10) / 3),
            (*hexagon_figure_eight(1.0), math.sqrt(10) / 3),
        ):
            rows.append(abs(max_width(core, weaving) / formula - 1))
        dt = time.perf_counter() - t0
        info["detail"] = f"max relative error {max(rows):.1e}"
        assert max(rows) < 1e-8
        assert dt < 5.0, f"runtime {dt:.2f}s"


def test_c4_golden_identities():
    with criterion(4, "golden-ratio identities") as info:
        forms = (4 * (PHI + 1) / math.sqrt(2 + PHI), 4 / math.sqrt(7 - 4 * PHI),
                 4 / math.sqrt(5 - 2 * math.sqrt(5)))
        spread = max(abs(a - b) for a in forms for b in forms)
        info["detail"] = f"phi^2 - phi - 1 = {PHI * PHI - PHI - 1:.1e}, closed-form spread {spread:.1e}"
        assert abs(PHI * PHI - PHI - 1) < 1e-12
        assert spread < 1e-14


def test_c5_unfold_conservation():
    with criterion(5, "unfold (1, phi, phi, 1) and refold") as info:
        core, weaving = pentagon_trefoil(1.0)
        strip = unfold(core, max_width(core, weaving))
        got = strip.segment_lengths
        info["detail"] = (
            "[segments " + ", ".join(f"{x:.6f}" for x in got)
            + "; boundaries " + ", ".join(f"{x:.6f}" for x in strip.boundary_lengths(1))
            + " / " + ", ".join(f"{x:.6f}" for x in strip.boundary_lengths(-1)) + "]"
        )
        assert strip.total_length == pytest.approx(2 * (1 + PHI), abs=1e-10)
        pts = refold(strip)
        g = to_gauge(core)
        s = math.dist(core.vertices[0], core.vertices[1])
        residual = max(math.dist((p.x / s, p.y / s), q) for p, q in zip(pts, g.vertices))
        assert residual * s < 1e-8
        want = (1.0, PHI, PHI, 1.0)
        assert len(got) == 4 and all(abs(a - b) < 1e-10 for a, b in zip(got, want)), \
            f"segment lengths {tuple(round(x, 10) for x in got)} != (1, phi, phi, 1)"


def test_c6_hexagon_derivation_replay():
    with criterion(6, "hexagon derivation replay") as info:
        res = hexagon_replay(3.0)
        info["detail"] = ", ".join(f"{k} {v:.1e}" for k, v in res.items())
        for name, value in res.items():
            assert value < 1e-10, name


def test_c7_property_suites():
    with criterion(7, "property suites, 1000 cases each") as info:
        t0 = time.perf_counter()
        for suite in test_properties.PROPERTY_SUITES:
            suite()
        dt = time.perf_counter() - t0
        info["detail"] = f"{len(test_properties.PROPERTY_SUITES)} suites"
        assert dt < 30.0, f"runtime {dt:.1f}s"


def test_c8_conjecture_evidence():
    with criterion(8, "local-minimum evidence (fixed combinatorics)") as info:
        t0 = time.perf_counter()
        parts = []
        for name, build, scale, gold in (
            ("trefoil", pentagon_trefoil, 1.0, TREFOIL_CONSTANT),
            ("figure-eight", hexagon_figure_eight, 3.0, FIGURE_EIGHT_CONSTANT),
        ):
            core, weaving = build(scale)
            check = local_min_check(core, weaving, epsilon=0.01 * scale, trials=1000, seed=0)
            assert check.scope == SCOPE_NOTE
            hits = 0
            for seed in range(10):
                start = jittered(core, 0.05 * scale, 100 + seed)
                rep = minimize_ratio(start, weaving, OptimizeOptions(seed=seed))
                assert rep.scope == SCOPE_NOTE
                hits += abs(rep.best_ratio - gold) < 1e-3
            parts.append(f"{name}: {check.violations} violations / {check.samples}, "
                         f"{hits}/10 recovered")
            info["detail"] = "; ".join(parts) + f"; {SCOPE_NOTE}"
            assert check.violations == 0, f"{name}: {check.violations} violations"
            assert hits >= 9, f"{name}: only {hits}/10 restarts recovered"
        dt = time.perf_counter() - t0
        assert dt < 300.0, f"runtime {dt:.0f}s"


def test_c9_cli_contract(tmp_path, capsys):
    with criterion(9, "CLI round-trip, rejection, SVG") as info:
        worst = 0.0
        for knot, build, scale in (("trefoil", pentagon_trefoil, 1.0),
                                   ("figure8", hexagon_figure_eight, 3.0)):
            path = cli_ratio(tmp_path, knot)
            core, weaving = parse_core_file(path.read_text())
            again, w2 = parse_core_file(serialize_core(core, weaving))
            ref = build(scale)[0]
            for p, q, r in zip(core.vertices, again.vertices, ref.vertices):
                worst = max(worst, abs(p.x - r.x), abs(p.y - r.y), abs(q.x - p.x), abs(q.y - p.y))
            assert w2 == weaving

            for cmd in (["render", str(path), "--svg"], ["unfold", str(path), "--svg"]):
                svg = tmp_path / f"{knot}-{cmd[0]}.svg"
                assert main(cmd + [str(svg)]) == 0
                ET.parse(svg)

            doc = json.loads(path.read_text())
            doc["crossings"][0] = {"i": 0, "j": 1, "over": 0}
            bad = tmp_path / f"{knot}-bad.json"
            bad.write_text(json.dumps(doc))
            assert main(["ratio", str(bad)]) == EXIT_VALIDATION
            del doc["crossings"][0]
            bad.write_text(json.dumps(doc))
            assert main(["ratio", str(bad)]) == EXIT_VALIDATION
        capsys.readouterr()
        info["detail"] = f"max coordinate drift {worst:.1e}, invalid crossings exit {EXIT_VALIDATION}"
        assert worst <= 1e-12


if __name__ == "__main__":
    code = pytest.main([__file__, "-q", "-p", "no:cacheprovider"])
    print("\n".join(RESULTS))
    sys.exit(code)
