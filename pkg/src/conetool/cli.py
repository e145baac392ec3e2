"""conetool command line.

    conetool dist {thompson,hilbert} A.json B.json
    conetool horo {thompson,hilbert,norm,variation} PARAMS.json PROBES.json [--oracle]
    conetool detour {thompson,variation} G.json G2.json [--limit-check] [--t T]
    conetool geodesic PARAMS.json [--t-grid 0,5,10]
    conetool verify [--suite NAME ...] [--trials N] [--seed S] [--tol E] [--algebra KINDS]

Exit codes: 0 success, 1 verification failure, 2 unreadable or invalid input,
3 non-interior point, 4 algebra mismatch.
"""

from __future__ import annotations

import argparse
import csv
import json
import math
import sys
from pathlib import Path

from . import hilbert as hb
from . import io
from . import order
from . import suites
from . import thompson as th
from .errors import AlgebraMismatchError, DomainError, NotInteriorError, ParamsError
from .limits import LinePath, limit_functional

EXIT_OK, EXIT_FAIL, EXIT_INPUT, EXIT_INTERIOR, EXIT_MISMATCH = 0, 1, 2, 3, 4

_MODE = {"thompson": "thompson", "norm": "thompson", "hilbert": "hilbert", "variation": "hilbert"}


def _params(obj, mode: str) -> th.BoundaryParams:
    if isinstance(obj, th.BoundaryParams):
        return obj if obj.mode == mode else obj.with_mode(mode)
    return th.pair_to_params(obj)


def cmd_dist(args) -> int:
    a, b = io.load_element(args.a), io.load_element(args.b)
    d = order.thompson_distance if args.metric == "thompson" else order.hilbert_distance
    print(io.format_number(d(a, b)))
    return EXIT_OK


def _evaluator(metric: str, boundary):
    if metric == "thompson":
        return th._as_pair(boundary)
    if metric == "hilbert":
        return hb.HilbertHorofunction(th._as_pair(boundary))
    params = _params(boundary, _MODE[metric])
    if metric == "norm":
        return lambda v: th.eval_norm_horofunction(params, v)
    return hb.VariationHorofunction(params)


def _oracle_path(metric: str, boundary):
    params = _params(boundary, _MODE[metric])
    if metric == "thompson":
        return th.BusemannPath(params)
    if metric == "hilbert":
        return hb.HilbertPath(params)
    if metric == "norm":
        return LinePath(params.omega, params.zeta)
    return hb.VariationPath(params)


def cmd_horo(args) -> int:
    boundary = io.load_boundary(args.params, _MODE[args.metric])
    probes = io.load_elements(args.probes)
    h = _evaluator(args.metric, boundary)
    if args.metric == "hilbert":
        probes = [order.project_det_one(x) for x in probes]
    values = [h(x) for x in probes]
    if not args.oracle:
        for v in values:
            print(io.format_number(v))
        return EXIT_OK
    traces = limit_functional(_oracle_path(args.metric, boundary), probes, args.metric)
    out = csv.writer(sys.stdout, lineterminator="\n")
    out.writerow(["probe", "value", "oracle", "delta", "converged"])
    for k, (v, tr) in enumerate(zip(values, traces)):
        io.write_csv(Path(args.trace_dir) / f"{args.metric}_probe{k:03d}.csv", ["t", "value", "increment"], tr.rows())
        out.writerow([k, io.format_number(v), io.format_number(tr.estimate), io.format_number(abs(v - tr.estimate)),
                      str(tr.converged).lower()])
    return EXIT_OK


def cmd_detour(args) -> int:
    mode = _MODE[args.metric]
    g, gp = (io.load_boundary(p, mode) for p in (args.g, args.gp))
    if args.metric == "thompson":
        delta = th.detour_distance_thompson(g, gp)
        limit = (lambda: th.detour_limit_thompson(g, gp, args.t))
    else:
        g, gp = _params(g, mode), _params(gp, mode)
        delta = hb.detour_distance_variation(g, gp)
        limit = (lambda: hb.detour_limit_variation(g, gp, args.t))
    print(io.format_number(delta))
    if args.limit_check:
        est = limit()
        diff = abs(delta - est) if math.isfinite(delta) else math.inf
        print(f"limit {io.format_number(est)}")
        print(f"difference {io.format_number(diff)}")
    return EXIT_OK


def _grid(text: str) -> list:
    text = text.strip()
    if not text:
        return []
    try:
        return [float(t) for t in text.split(",")]
    except ValueError as exc:
        raise io.FormatError(f"bad --t-grid: {exc}") from exc


def cmd_geodesic(args) -> int:
    params = _params(io.load_boundary(args.params, "thompson"), "thompson")
    rows = th.geodesic_rows(params, _grid(args.t_grid))
    out = csv.writer(sys.stdout, lineterminator="\n")
    out.writerow(["t", "d_T", "err_y", "err_z"])
    for row in rows:
        out.writerow([io.format_number(v) for v in row])
    return EXIT_OK


def cmd_verify(args) -> int:
    if args.list:
        for s in suites.REGISTRY.values():
            print(f"{s.name:32s} {s.module:18s} {s.invariant}")
        return EXIT_OK
    names = []
    for item in args.suite or ["all"]:
        names.extend(n.strip() for n in item.split(",") if n.strip())
    if "all" in names:
        names = list(suites.REGISTRY)
    unknown = [n for n in names if n not in suites.REGISTRY]
    if unknown:
        print(f"conetool: unknown suite(s): {', '.join(unknown)}", file=sys.stderr)
        return EXIT_INPUT
    try:
        algebras = suites.parse_algebras(args.algebra)
    except ValueError as exc:
        print(f"conetool: bad --algebra: {exc}", file=sys.stderr)
        return EXIT_INPUT
    reports = [
        suites.run_suite(n, trials=args.trials, seed=args.seed, tol=args.tol, algebras=algebras, trace_dir=args.trace_dir)
        for n in names
    ]
    passed = all(r.passed for r in reports)
    doc = {
        "seed": args.seed,
        "algebras": [str(a) for a in algebras],
        "passed": passed,
        "suites": [r.to_json(timing=args.timing) for r in reports],
    }
    io.dump_json(doc, sys.stdout)
    return EXIT_OK if passed else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="conetool", description="Thompson and Hilbert geometry of symmetric cones.")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("dist", help="distance between two interior points")
    p.add_argument("metric", choices=("thompson", "hilbert"))
    p.add_argument("a")
    p.add_argument("b")
    p.set_defaults(func=cmd_dist)

    p = sub.add_parser("horo", help="evaluate a horofunction on probes")
    p.add_argument("metric", choices=("thompson", "hilbert", "norm", "variation"))
    p.add_argument("params", help="BoundaryParams or HoroPair JSON")
    p.add_argument("probes", help="element or list of elements")
    p.add_argument("--oracle", action="store_true", help="compare with the numerical limit along the Busemann path")
    p.add_argument("--trace-dir", default="traces", help="where --oracle writes convergence traces (default: %(default)s)")
    p.set_defaults(func=cmd_horo)

    p = sub.add_parser("detour", help="detour distance between two horofunctions")
    p.add_argument("metric", choices=("thompson", "variation"))
    p.add_argument("g")
    p.add_argument("gp")
    p.add_argument("--limit-check", action="store_true", help="also evaluate the limit formula")
    p.add_argument("--t", type=float, default=30.0, help="path parameter for --limit-check (default: %(default)s)")
    p.set_defaults(func=cmd_detour)

    p = sub.add_parser("geodesic", help="CSV of the Busemann geodesic and its scaled limits")
    p.add_argument("params")
    p.add_argument("--t-grid", default="0,5,10,15,20,25,30", help="comma-separated t values (default: %(default)s)")
    p.set_defaults(func=cmd_geodesic)

    p = sub.add_parser("verify", help="run property suites and print a JSON report")
    p.add_argument("--suite", action="append", help="suite name, comma list, or 'all' (repeatable)")
    p.add_argument("--trials", type=int, default=None, help="trials per suite (default: per-suite)")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--tol", type=float, default=None, help="override every suite tolerance")
    p.add_argument("--algebra", default=None, help="e.g. 'sym:3,spin:6' or 'herm' (default: all test algebras)")
    p.add_argument("--trace-dir", default=None, help="write convergence traces here")
    p.add_argument("--timing", action="store_true", help="include elapsed seconds (breaks byte-determinism)")
    p.add_argument("--list", action="store_true", help="list suites and exit")
    p.set_defaults(func=cmd_verify)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except NotInteriorError as exc:
        print(f"conetool: {exc}", file=sys.stderr)
        return EXIT_INTERIOR
    except AlgebraMismatchError as exc:
        print(f"conetool: {exc}", file=sys.stderr)
        return EXIT_MISMATCH
    except (io.FormatError, ParamsError, DomainError, OSError, json.JSONDecodeError, ValueError) as exc:
        print(f"conetool: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
