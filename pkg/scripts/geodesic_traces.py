"""Busemann geodesics of random boundary points.

For each random BoundaryParams writes t, d_T(psi(t), u), and the distances of
e^-t psi(t) and e^-t psi(t)^-1 from the limit pair (y, z), one CSV per point.

    python scripts/geodesic_traces.py --count 5 --algebra herm:3 --out-dir traces/geodesics
"""

import argparse
from pathlib import Path

import numpy as np

from conetool import io
from conetool import sampling as smp
from conetool import suites
from conetool import thompson as th


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("--count", type=int, default=5)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--algebra", default="sym:3")
    ap.add_argument("--t-max", type=float, default=30.0)
    ap.add_argument("--step", type=float, default=1.0)
    ap.add_argument("--out-dir", default="traces/geodesics")
    args = ap.parse_args(argv)

    pool = suites.parse_algebras(args.algebra)
    grid = list(np.arange(0.0, args.t_max + args.step / 2, args.step))
    out = Path(args.out_dir)
    for k in range(args.count):
        rng = np.random.default_rng(suites.trial_seed(args.seed, "geodesic-traces", k))
        a = pool[k % len(pool)]
        params = smp.random_params(rng, a)
        rows = th.geodesic_rows(params, grid)
        path = io.write_csv(out / f"geodesic_{k:03d}.csv", ["t", "d_T", "err_y", "err_z"], rows)
        with open(out / f"geodesic_{k:03d}.json", "w") as fh:
            io.dump_json(io.params_to_json(params), fh)
        last = rows[-1]
        print(f"{path}: {a}, I={list(params.I)}, J={list(params.J)}, d_T({last[0]:g}) = {last[1]:.6f}, "
              f"err_y {last[2]:.2e}, err_z {last[3]:.2e}")


if __name__ == "__main__":
    main()
