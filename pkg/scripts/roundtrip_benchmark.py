"""Round-trip fidelity, failure rate and timing of the decomposition per qubit number.

    python3 scripts/roundtrip_benchmark.py --n 3 4 5 6 7 8 --samples 200 --seed 1
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from symdecomp import SolverFailure, decompose, fidelity, random_state, reconstruct


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n", type=int, nargs="+", default=list(range(3, 13)))
    ap.add_argument("--samples", type=int, default=200)
    ap.add_argument("--seed", type=int, default=1)
    args = ap.parse_args()

    print(f"{'N':>3} {'ok':>5} {'fail':>5} {'worst deficit':>14} {'median cond':>12} {'ms/state':>9}")
    for n in args.n:
        rng = np.random.default_rng([args.seed, n])
        deficits, conds, fails = [], [], 0
        t0 = time.perf_counter()
        for _ in range(args.samples):
            s = random_state(n, rng)
            try:
                d, diag = decompose(s)
            except SolverFailure:
                fails += 1
                continue
            back, _ = reconstruct(d)
            deficits.append(1 - fidelity(s, back))
            conds.append(diag.hankel_condition)
        ms = 1e3 * (time.perf_counter() - t0) / args.samples
        worst = max(deficits) if deficits else float("nan")
        med = float(np.median(conds)) if conds else float("nan")
        print(f"{n:3d} {len(deficits):5d} {fails:5d} {worst:14.2e} {med:12.2e} {ms:9.2f}")


if __name__ == "__main__":
    main()
