"""Command-line interface: ``flatknot <command> ...``.

Exit codes: 0 success, 1 usage or I/O, 2 core-file syntax, 3 validation,
4 numerical failure. Failures print one line to stderr.
"""

from __future__ import annotations

import argparse
import csv
import sys
from pathlib import Path

from .constructions import hexagon_figure_eight, pentagon_trefoil
from .corefile import read_core, serialize_core, write_core
from .exceptions import FlatKnotError, NoPositiveWidth, ParseError, ValidationError
from .optimize import SCOPE_NOTE, OptimizeOptions, length_mode, local_min_check, minimize_ratio
from .ribbon import admissible, core_length, layout, max_width
from .svg import render_svg, render_unfolded_svg
from .unfold import unfold

EXIT_OK, EXIT_USAGE, EXIT_PARSE, EXIT_VALIDATION, EXIT_NUMERIC = range(5)

BUILTINS = {
    "trefoil": (pentagon_trefoil, 1.0),
    "figure8": (hexagon_figure_eight, 3.0),
}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _g(x: float) -> str:
    return format(x, ".15g")


def _emit(text: str, out) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        Path(out).write_text(text, encoding="utf-8")


def cmd_builtin(args) -> int:
    build, default = BUILTINS[args.knot]
    scale = default if args.scale is None else args.scale
    if not scale > 0:
        raise UsageError("--scale must be positive")
    core, weaving = build(scale)
    meta = {"name": args.knot, "notes": f"builtin construction, scale {scale!r}"}
    _emit(serialize_core(core, weaving, meta), args.out)
    return EXIT_OK


def cmd_ratio(args) -> int:
    doc = read_core(args.file)
    mode = args.mode or length_mode(doc.core)
    length = core_length(doc.core, mode)
    width = max_width(doc.core, doc.weaving)
    print(f"length {_g(length)}")
    print(f"width {_g(width)}")
    print(f"ratio {_g(length / width)}")
    return EXIT_OK


def cmd_maxwidth(args) -> int:
    doc = read_core(args.file)
    print(_g(max_width(doc.core, doc.weaving)))
    return EXIT_OK


def cmd_unfold(args) -> int:
    doc = read_core(args.file)
    width = max_width(doc.core, doc.weaving)
    strip = unfold(doc.core, width)
    print(f"width {_g(width)}")
    print("segments " + " ".join(_g(s) for s in strip.segment_lengths))
    print(f"total {_g(strip.total_length)}")
    for m in strip.fold_marks:
        print(f"fold {_g(m.position)} {_g(m.angle)}")
    if args.svg:
        Path(args.svg).write_text(render_unfolded_svg(strip), encoding="utf-8")
    return EXIT_OK


def cmd_render(args) -> int:
    doc = read_core(args.file)
    width = args.width
    if width is None:
        width = max_width(doc.core, doc.weaving)
    elif not width > 0:
        raise UsageError("--width must be positive")
    elif not admissible(doc.core, doc.weaving, width):
        print(f"warning: width {_g(width)} is not admissible", file=sys.stderr)
    Path(args.svg).write_text(render_svg(layout(doc.core, width), doc.weaving),
                              encoding="utf-8")
    return EXIT_OK


def cmd_optimize(args) -> int:
    doc = read_core(args.file)
    opts = OptimizeOptions(max_evals=args.evals, restarts=args.restarts, seed=args.seed)
    report = minimize_ratio(doc.core, doc.weaving, opts)
    print(f"start_ratio {_g(report.start_ratio)}")
    print(f"best_ratio {_g(report.best_ratio)}")
    print(f"evals {report.evals_used}")
    print(f"scope: {SCOPE_NOTE}")
    out = args.out or Path(args.file).with_suffix(".optimized.json")
    meta = dict(doc.metadata)
    meta["notes"] = f"optimized; ratio {_g(report.best_ratio)}; {SCOPE_NOTE}"
    write_core(out, report.best_core, doc.weaving, meta)
    if args.trace:
        with open(args.trace, "w", newline="", encoding="utf-8") as fh:
            w = csv.writer(fh)
            w.writerow(["evals", "ratio"])
            w.writerows((e, repr(r)) for e, r in report.trace)
    return EXIT_OK


def cmd_check(args) -> int:
    doc = read_core(args.file)
    rep = local_min_check(doc.core, doc.weaving, args.epsilon, args.trials, args.seed)
    print(f"base_ratio {_g(rep.base_ratio)}")
    print(f"min_perturbed_ratio {_g(rep.min_perturbed_ratio)}")
    print(f"violations {rep.violations}")
    print(f"samples {rep.samples} rejected {rep.rejected}")
    print(f"scope: {SCOPE_NOTE}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="flatknot", description="Flat knotted ribbons: widths, ratios, drawings.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("builtin", help="emit a built-in construction as a core file")
    s.add_argument("knot", choices=sorted(BUILTINS))
    s.add_argument("--scale", type=float, help="pentagon side (trefoil) or a (figure8)")
    s.add_argument("--out")
    s.set_defaults(func=cmd_builtin)

    s = sub.add_parser("ratio", help="print length, width and their ratio")
    s.add_argument("file")
    s.add_argument("--mode", choices=["closed", "truncated"])
    s.set_defaults(func=cmd_ratio)

    s = sub.add_parser("maxwidth", help="print the largest admissible width")
    s.add_argument("file")
    s.set_defaults(func=cmd_maxwidth)

    s = sub.add_parser("unfold", help="print the unfolded strip")
    s.add_argument("file")
    s.add_argument("--svg")
    s.set_defaults(func=cmd_unfold)

    s = sub.add_parser("render", help="draw the folded ribbon")
    s.add_argument("file")
    s.add_argument("--svg", required=True)
    s.add_argument("--width", type=float)
    s.set_defaults(func=cmd_render)

    s = sub.add_parser("optimize", help="search vertex positions for a smaller ratio")
    s.add_argument("file")
    s.add_argument("--evals", type=int, default=OptimizeOptions.max_evals)
    s.add_argument("--restarts", type=int, default=OptimizeOptions.restarts)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--trace", help="CSV of (evals, ratio) improvements")
    s.add_argument("--out", help="optimized core file (default FILE.optimized.json)")
    s.set_defaults(func=cmd_optimize)

    s = sub.add_parser("check", help="sample perturbations around a core")
    s.add_argument("file")
    s.add_argument("--epsilon", type=float, required=True)
    s.add_argument("--trials", type=int, required=True)
    s.add_argument("--seed", type=int, default=0)
    s.set_defaults(func=cmd_check)
    return p


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
        return args.func(args)
    except UsageError as exc:
        print(f"flatknot: usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ParseError as exc:
        print(f"flatknot: parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except (ValidationError, FlatKnotError, ValueError, TypeError) as exc:
        if isinstance(exc, NoPositiveWidth):
            print(f"flatknot: numerical failure: {exc}", file=sys.stderr)
            return EXIT_NUMERIC
        print(f"flatknot: invalid input: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except ArithmeticError as exc:
        print(f"flatknot: numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except OSError as exc:
        print(f"flatknot: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
