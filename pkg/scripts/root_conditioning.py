"""Compare the Mobius covariance error of Majorana roots with their conditioning.

For random states ``s`` and maps ``g`` the covariance error is the chordal
distance between ``g`` applied to the roots of ``s`` and the roots of
``g s``.  The perturbation column is the largest root displacement caused by
random relative perturbations of the Dicke amplitudes of ``g s`` at the size of
double rounding.  A covariance error of the same order as the perturbation
shift is set by conditioning, not by the root finder.

    python3 scripts/root_conditioning.py --count 100 --seed 20240608 --top 5
"""

from __future__ import annotations

import argparse

import numpy as np

from symdecomp import (
    SymmetricState,
    apply_collective,
    majorana_polynomial,
    majorana_roots,
    mobius_on_roots,
    random_sl2,
    random_state,
)
from symdecomp.majorana import multiset_distance


def perturbation_shift(s: SymmetricState, rng: np.random.Generator, trials: int, rel: float) -> float:
    base = majorana_roots(majorana_polynomial(s), 0.0)
    worst = 0.0
    for _ in range(trials):
        noise = rng.normal(size=s.dicke.size) + 1j * rng.normal(size=s.dicke.size)
        t = SymmetricState(s.dicke * (1 + rel * noise))
        worst = max(worst, multiset_distance(base, majorana_roots(majorana_polynomial(t), 0.0)))
    return worst


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--count", type=int, default=100)
    ap.add_argument("--seed", type=int, default=20240608)
    ap.add_argument("--trials", type=int, default=20)
    ap.add_argument("--rel", type=float, default=2.2e-16)
    ap.add_argument("--top", type=int, default=5)
    args = ap.parse_args()

    rng = np.random.default_rng(args.seed)
    noise_rng = np.random.default_rng([args.seed, 1])
    rows = []
    for i in range(args.count):
        n = 2 + i % 11
        s = random_state(n, rng)
        g = random_sl2(rng)
        moved = apply_collective(g, s)
        err = multiset_distance(
            mobius_on_roots(g, majorana_roots(majorana_polynomial(s))),
            majorana_roots(majorana_polynomial(moved)),
        )
        rows.append((err, i, n, perturbation_shift(moved, noise_rng, args.trials, args.rel)))
    rows.sort(reverse=True)
    print(f"{'instance':>8} {'N':>3} {'covariance error':>17} {'perturbation shift':>19}")
    for err, i, n, shift in rows[: args.top]:
        print(f"{i:8d} {n:3d} {err:17.2e} {shift:19.2e}")


if __name__ == "__main__":
    main()
