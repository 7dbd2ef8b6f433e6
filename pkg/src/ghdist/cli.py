"""Command-line front end.

Machine output is JSON on stdout (sorted keys, byte-identical across runs);
a one-line human summary goes to stderr unless ``--json`` is given.

Exit codes: 0 success, 1 I/O or parse error, 2 invalid metric,
3 node budget exhausted (the partial result is still printed).
"""
from __future__ import annotations

import argparse
import hashlib
import json
import sys
import time
from pathlib import Path

import numpy as np

from . import fixtures
from .bounds import ghc_bounds, lower_bounds
from .exceptions import BudgetExceeded, DimensionMismatch, DuplicatePoint, GHDistError, MetricError
from .geodesics import InterpolantFamily, interpolate, step_table
from .io import ParseError, dumps, fixture_to_obj, load_model, read_json, space_to_obj
from .metric import TOL, from_points, hausdorff
from .search import default_budget, gh_exact, ghc_exact

EXIT_OK, EXIT_IO, EXIT_INVALID, EXIT_BUDGET = 0, 1, 2, 3


class _Fail(Exception):
    def __init__(self, code, message):
        super().__init__(message)
        self.code = code


def _digest(path) -> str:
    return hashlib.sha256(Path(path).read_bytes()).hexdigest()[:16]


def _load(path, tol):
    try:
        return load_model(path, tol)
    except (OSError, json.JSONDecodeError, ParseError, TypeError) as exc:
        raise _Fail(EXIT_IO, f"{path}: {exc}") from exc
    except (MetricError, DuplicatePoint, DimensionMismatch, IndexError, ValueError) as exc:
        raise _Fail(EXIT_INVALID, f"{path}: {exc}") from exc


def _report(args, inputs, results, nodes=None):
    rep = {
        "command": args.argv,
        "inputs": {Path(p).name: _digest(p) for p in inputs},
        "results": results,
        "budget": {"cap": args.budget, "nodes": nodes},
    }
    if getattr(args, "timing", False):
        rep["wall_time"] = round(time.perf_counter() - args.t0, 6)
    return rep


def _emit(args, report, summary):
    sys.stdout.write(dumps(report) + "\n")
    if not args.json:
        print(summary, file=sys.stderr)


# ----------------------------------------------------------------- commands

def cmd_validate(args) -> int:
    Xc, _ = _load(args.path, args.tolerance)
    _emit(args, _report(args, [args.path], {"valid": True, "n": Xc.n, "edges": len(Xc.edges)}),
          f"{args.path}: valid metric on {Xc.n} points")
    return EXIT_OK


def _hausdorff_union(pa, pb):
    # both inputs must be point clouds; distances are taken in their union
    A, B = read_json(pa), read_json(pb)
    if not (isinstance(A, dict) and isinstance(B, dict) and "points" in A and "points" in B):
        raise _Fail(EXIT_IO, "hausdorff needs two point-cloud inputs ('points')")
    if A.get("norm", "l2") != B.get("norm", "l2"):
        raise _Fail(EXIT_IO, "point clouds use different norms")
    PA, PB = np.atleast_2d(np.array(A["points"], float)), np.atleast_2d(np.array(B["points"], float))
    if PA.shape[1] != PB.shape[1]:
        raise _Fail(EXIT_INVALID, "point clouds live in different dimensions")
    union, inv = np.unique(np.vstack([PA, PB]), axis=0, return_inverse=True)
    inv = np.ravel(inv)
    Z = from_points(union, A.get("norm", "l2"))
    return hausdorff(Z, inv[:len(PA)], inv[len(PA):])


def cmd_dist(args) -> int:
    inputs = [args.a, args.b]
    if args.kind == "hausdorff":
        try:
            value = _hausdorff_union(args.a, args.b)
        except (OSError, json.JSONDecodeError) as exc:
            raise _Fail(EXIT_IO, str(exc)) from exc
        _emit(args, _report(args, inputs, {"kind": "hausdorff", "value": float(value)}),
              f"d_H = {value:.12g}")
        return EXIT_OK

    (Xc, ex), (Yc, ey) = _load(args.a, args.tolerance), _load(args.b, args.tolerance)
    if args.kind == "ghc":
        if not (ex and ey):
            raise _Fail(EXIT_IO, "ghc needs both inputs with adjacency ('metric' and 'edges')")
        report = ghc_bounds(Xc, Yc)
    else:
        report = lower_bounds(Xc.metric, Yc.metric)
    results = {"kind": args.kind, "bounds": report.to_dict()}
    if args.bounds_only:
        _emit(args, _report(args, inputs, results),
              f"{report.lower:.12g} <= d <= {report.upper:.12g}")
        return EXIT_OK

    search = ghc_exact if args.kind == "ghc" else gh_exact
    A, B = (Xc, Yc) if args.kind == "ghc" else (Xc.metric, Yc.metric)
    res = search(A, B, budget=args.budget, threads=args.threads)
    results.update(res.to_dict())
    _emit(args, _report(args, inputs, results, res.nodes_explored),
          f"d_{args.kind} = {res.value:.12g} ({'optimal' if res.optimal else 'budget exhausted'})")
    return EXIT_OK if res.optimal else EXIT_BUDGET


def cmd_bounds(args) -> int:
    (Xc, _), (Yc, _) = _load(args.a, args.tolerance), _load(args.b, args.tolerance)
    report = ghc_bounds(Xc, Yc) if args.continuous else lower_bounds(Xc.metric, Yc.metric)
    _emit(args, _report(args, [args.a, args.b], report.to_dict()),
          f"{report.lower:.12g} <= d <= {report.upper:.12g}")
    return EXIT_OK


def cmd_geodesic(args) -> int:
    (Xc, _), (Yc, _) = _load(args.a, args.tolerance), _load(args.b, args.tolerance)
    if args.t:
        ts = sorted({0.0, 1.0, *args.t})
        if not all(0 <= t <= 1 for t in ts):
            raise _Fail(EXIT_IO, "--t values must lie in [0, 1]")
    else:
        ts = [i / args.steps for i in range(args.steps + 1)]
    try:
        fam = InterpolantFamily.optimal(Xc.metric, Yc.metric, budget=args.budget)
        rows = step_table(fam, ts, budget=args.budget)
    except BudgetExceeded as exc:
        results = {"error": "budget", "partial": exc.result.to_dict()}
        _emit(args, _report(args, [args.a, args.b], results, exc.result.nodes_explored),
              "node budget exhausted")
        return EXIT_BUDGET
    results = {
        "disR": float(fam.disR),
        "pairs": [list(p) for p in fam.R.pairs],
        "steps": rows,
        "length": float(sum(r["measured"] for r in rows)),
    }
    if args.t:
        results["interpolants"] = {
            repr(float(t)): space_to_obj(interpolate(fam, t)) for t in args.t}
    _emit(args, _report(args, [args.a, args.b], results),
          f"{len(rows)} steps, length {results['length']:.12g}, dis R / 2 = {fam.disR / 2:.12g}")
    return EXIT_OK


_FIXTURES = {
    "omega": lambda a: fixtures.build_omega_space(a.N, exact=a.exact),
    "shifted": lambda a: fixtures.build_shifted_pairs(a.N, exact=a.exact),
    "interval_stack": lambda a: fixtures.build_interval_stack(a.K, a.n, a.grid_exp),
    "triode": lambda a: fixtures.build_triode(a.n, a.grid),
}


def cmd_fixture(args) -> int:
    if args.name == "checks":
        checks = fixtures.build_counterexample_checks(budget=args.budget)
        ok = all(c["holds"] for c in checks)
        _emit(args, _report(args, [], {"checks": checks, "all_hold": ok}),
              f"{sum(c['holds'] for c in checks)}/{len(checks)} checks hold")
        return EXIT_OK
    fx = _FIXTURES[args.name](args)
    _emit(args, _report(args, [], fixture_to_obj(fx)),
          f"fixture {fx.name}: " + ", ".join(f"{k} ({v.n} pts)" for k, v in fx.spaces.items()))
    return EXIT_OK


# ------------------------------------------------------------------- parser

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--budget", type=int, default=None,
                        help="search node cap (default: $GHDIST_BUDGET or 1000000)")
    common.add_argument("--threads", type=int, default=1)
    common.add_argument("--tolerance", type=float, default=TOL,
                        help="slack for the metric axioms when validating inputs")
    common.add_argument("--json", action="store_true", help="machine output only")
    common.add_argument("--timing", action="store_true", help="add wall time to the report")

    p = argparse.ArgumentParser(prog="ghdist", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("validate", parents=[common], help="check the metric axioms")
    s.add_argument("path")
    s.set_defaults(func=cmd_validate)

    s = sub.add_parser("dist", parents=[common], help="gh, ghc or Hausdorff distance")
    s.add_argument("kind", choices=["gh", "ghc", "hausdorff"])
    s.add_argument("a")
    s.add_argument("b")
    s.add_argument("--bounds-only", action="store_true")
    s.set_defaults(func=cmd_dist)

    s = sub.add_parser("bounds", parents=[common], help="cheap lower and upper bounds")
    s.add_argument("a")
    s.add_argument("b")
    s.add_argument("--continuous", action="store_true", help="include connectivity bounds")
    s.set_defaults(func=cmd_bounds)

    s = sub.add_parser("geodesic", parents=[common], help="interpolate along an optimal correspondence")
    s.add_argument("a")
    s.add_argument("b")
    s.add_argument("--steps", type=int, default=4)
    s.add_argument("--t", type=float, action="append", help="extra parameter values (repeatable)")
    s.set_defaults(func=cmd_geodesic)

    s = sub.add_parser("fixture", parents=[common], help="emit a worked example as JSON")
    s.add_argument("name", choices=[*_FIXTURES, "checks"])
    s.add_argument("--N", type=int, default=8)
    s.add_argument("--K", type=int, default=5)
    s.add_argument("--n", type=int, default=2)
    s.add_argument("--grid-exp", type=int, default=None)
    s.add_argument("--grid", type=int, default=24)
    s.add_argument("--exact", action="store_true", help="rational distances where supported")
    s.set_defaults(func=cmd_fixture)
    return p


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    args = build_parser().parse_args(argv)
    args.argv = argv
    args.t0 = time.perf_counter()
    if args.budget is None:
        args.budget = default_budget()
    if getattr(args, "steps", 1) < 1:
        print("error: --steps must be positive", file=sys.stderr)
        return EXIT_IO
    try:
        return args.func(args)
    except _Fail as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code
    except GHDistError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
