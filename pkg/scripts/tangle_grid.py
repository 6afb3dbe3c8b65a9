"""Tabulate the three-qubit tangle over the LU canonical parameters.

Writes a CSV with columns ``varphi, y, epsilon, tau`` and prints, per value of
``varphi``, the number of monotonicity violations along ``y`` (should grow) and
``epsilon`` (should shrink).

    python3 scripts/tangle_grid.py --points 50 --out tangle.csv
"""

from __future__ import annotations

import argparse
import csv

import numpy as np

from symdecomp.measures import tangle_from_lu_parameters


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--points", type=int, default=50)
    ap.add_argument("--varphi", type=float, nargs="+", default=[0.0, 0.4, 1.1, 2.0])
    ap.add_argument("--out", default=None, help="CSV path; omitted means no file")
    args = ap.parse_args()

    y = np.linspace(0.02, 1.0, args.points)
    eps = np.linspace(0.05, np.pi - 0.05, args.points)
    rows = []
    for varphi in args.varphi:
        tau = tangle_from_lu_parameters(y[:, None], eps[None, :], varphi)
        up = int(np.sum(np.diff(tau, axis=0) <= 0))
        down = int(np.sum(np.diff(tau, axis=1) >= 0))
        print(f"varphi={varphi:.3f}  tau in [{tau.min():.4f}, {tau.max():.4f}]  "
              f"violations along y {up}, along epsilon {down}")
        rows += [(varphi, yi, ej, tau[i, j]) for i, yi in enumerate(y) for j, ej in enumerate(eps)]
    if args.out:
        with open(args.out, "w", newline="") as fh:
            w = csv.writer(fh)
            w.writerow(["varphi", "y", "epsilon", "tau"])
            w.writerows(rows)
        print(f"wrote {len(rows)} rows to {args.out}")


if __name__ == "__main__":
    main()
