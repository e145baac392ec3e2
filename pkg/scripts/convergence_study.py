"""Convergence rates of the limit oracles.

Cone metrics along Busemann geodesics converge like e^-t; the normed metrics
along straight lines converge like 1/t.  For each metric this prints the
median and maximum error at each t over random boundary points and probes,
plus the error of the 1/t extrapolation, and writes a CSV.

    python scripts/convergence_study.py --trials 40 --out convergence.csv
"""

import argparse
from dataclasses import dataclass

import numpy as np

from conetool import hilbert as hb
from conetool import io
from conetool import order
from conetool import sampling as smp
from conetool import suites
from conetool import thompson as th
from conetool.limits import LinePath, limit_functional


@dataclass
class StudyConfig:
    trials: int = 40
    seed: int = 0
    cone_grid: tuple = (2.0, 4.0, 8.0, 12.0, 16.0, 20.0)
    normed_grid: tuple = (30.0, 60.0, 120.0, 240.0, 480.0)
    algebras: str | None = None


def _case(metric, rng, a):
    """(path, probe, exact value) for one random boundary point."""
    if metric == "thompson":
        p = smp.random_params(rng, a)
        x = smp.random_interior(rng, a)
        return th.BusemannPath(p), x, th.eval_thompson_horofunction(th.params_to_pair(p), x)
    if metric == "hilbert":
        g = hb.VariationHorofunction(smp.random_params(rng, a, "hilbert"))
        x = order.project_det_one(smp.random_interior(rng, a))
        return hb.HilbertPath(g), x, hb.exp_extension_hilbert(g)(x)
    if metric == "norm":
        p = smp.random_params(rng, a)
        v = smp.random_element(rng, a, 2.0)
        return LinePath(p.omega, p.zeta), v, th.eval_norm_horofunction(p, v)
    g = hb.VariationHorofunction(smp.random_params(rng, a, "hilbert"))
    v = smp.random_traceless(rng, a, 2.0)
    return hb.VariationPath(g), v, g(v)


def study(cfg: StudyConfig):
    pool = suites.parse_algebras(cfg.algebras)
    rows = []
    for metric in ("thompson", "hilbert", "norm", "variation"):
        grid = cfg.cone_grid if metric in ("thompson", "hilbert") else cfg.normed_grid
        errs, ext = [], []
        for k in range(cfg.trials):
            rng = np.random.default_rng(suites.trial_seed(cfg.seed, f"study-{metric}", k))
            path, x, exact = _case(metric, rng, pool[k % len(pool)])
            tr = limit_functional(path, [x], metric, schedule=grid, extrapolate=False)[0]
            errs.append(np.abs(np.asarray(tr.values) - exact))
            if metric in ("norm", "variation"):
                ext.append(abs(limit_functional(path, [x], metric)[0].estimate - exact))
        errs = np.asarray(errs)
        for j, t in enumerate(grid):
            rows.append((metric, t, float(np.median(errs[:, j])), float(errs[:, j].max()), "raw"))
        if ext:
            rows.append((metric, grid[0], float(np.median(ext)), float(max(ext)), "extrapolated"))
    return rows


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("--trials", type=int, default=40)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--algebra", default=None, help="e.g. 'sym:3,spin:6'")
    ap.add_argument("--out", default=None, help="CSV output path")
    args = ap.parse_args(argv)
    cfg = StudyConfig(trials=args.trials, seed=args.seed, algebras=args.algebra)
    rows = study(cfg)
    print(f"{'metric':10s} {'t':>7s} {'median':>10s} {'max':>10s}  kind")
    for metric, t, med, mx, kind in rows:
        print(f"{metric:10s} {t:7.1f} {med:10.2e} {mx:10.2e}  {kind}")
    if args.out:
        io.write_csv(args.out, ["metric", "t", "median_error", "max_error", "kind"], rows)


if __name__ == "__main__":
    main()
