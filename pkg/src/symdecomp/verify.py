"""Randomized self-check of the package's structural properties."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .canonical import form_distance, il_canonical, lu_canonical, parametric_relation_residual
from .decomp import decompose, reconstruct, verify_paper_conditions
from .errors import SolverFailure
from .majorana import majorana_polynomial, majorana_roots, mobius_on_roots, multiset_distance
from .measures import lu_invariants, three_tangle
from .symstate import (
    apply_collective,
    apply_collective_normalized,
    fidelity,
    random_sl2,
    random_state,
    random_unitary,
)


@dataclass(frozen=True)
class PropertyResult:
    name: str
    passed: bool
    worst: float
    tolerance: float
    trials: int
    skipped: int = 0


@dataclass(frozen=True)
class VerifyConfig:
    seed: int = 0
    n_max: int = 9
    trials: int = 6
    tangle_trials: int = 50


def _sizes(cfg: VerifyConfig) -> list[int]:
    return list(range(3, max(cfg.n_max, 3) + 1))


def _result(name, values, tol, skipped=0):
    worst = max(values) if values else 0.0
    return PropertyResult(name, bool(values) and worst <= tol, float(worst), tol, len(values), skipped)


def run_properties(cfg: VerifyConfig = VerifyConfig()) -> tuple[list[PropertyResult], dict[str, float]]:
    """Evaluate every property; returns results and informational measurements.

    States for which no decomposition with an orthogonal pair exists (even
    ``N`` only) are counted as skipped rather than failures; the fraction is
    reported in the informational dict, as is the even-N IL discrepancy.
    """
    rng = np.random.default_rng(cfg.seed)
    results = []
    info: dict[str, float] = {}

    roundtrip, conds, skipped, attempts = [], [], 0, 0
    for n in _sizes(cfg):
        for _ in range(cfg.trials):
            s = random_state(n, rng)
            attempts += 1
            try:
                d, _ = decompose(s)
            except SolverFailure:
                skipped += 1
                continue
            rec, _ = reconstruct(d)
            roundtrip.append(1 - fidelity(rec, s))
            diag = verify_paper_conditions(d, s)
            conds.append(max(diag.max_root_residual, diag.value_at_zero_residual, diag.max_determinant_residual))
    results.append(_result("roundtrip_fidelity", roundtrip, 1e-9, skipped))
    results.append(_result("condition_residuals", conds, 1e-8, skipped))
    info["no_decomposition_fraction"] = skipped / max(attempts, 1)

    lu_inv, lu_form, skipped = [], [], 0
    for n in _sizes(cfg):
        for _ in range(cfg.trials):
            s = random_state(n, rng)
            u = random_unitary(rng)
            try:
                d1, _ = decompose(s)
                d2, _ = decompose(apply_collective(u, s))
            except SolverFailure:
                skipped += 1
                continue
            lu_inv.append(lu_invariants(d1).distance(lu_invariants(d2)))
            lu_form.append(
                form_distance(lu_canonical(s, decomposition=d1)[0], lu_canonical(s, decomposition=d2)[0])
            )
    results.append(_result("lu_invariants_covariance", lu_inv, 1e-7, skipped))
    results.append(_result("lu_canonical_covariance", lu_form, 1e-7, skipped))

    il_odd, il_even, relation, skipped = [], [], [], 0
    for n in _sizes(cfg):
        for _ in range(cfg.trials):
            s = random_state(n, rng)
            g = random_sl2(rng)
            try:
                f1, _ = il_canonical(s)
                f2, _ = il_canonical(apply_collective_normalized(g, s)[0])
            except SolverFailure:
                skipped += 1
                continue
            (il_odd if n % 2 else il_even).append(form_distance(f1, f2))
            if n % 2 == 0:
                relation.append(parametric_relation_residual(f1))
    results.append(_result("il_canonical_invariance_odd", il_odd, 1e-6, skipped))
    results.append(_result("even_il_parametric_relation", relation, 1e-9))
    if il_even:
        info["even_il_invariance_worst"] = max(il_even)
        info["even_il_invariance_fraction_within_1e-6"] = float(np.mean(np.array(il_even) <= 1e-6))

    mob = []
    for n in range(2, max(cfg.n_max, 3) + 1):
        for _ in range(cfg.trials):
            s = random_state(n, rng)
            g = random_sl2(rng)
            r1 = majorana_roots(majorana_polynomial(s))
            r2 = majorana_roots(majorana_polynomial(apply_collective(g, s)))
            mob.append(multiset_distance(mobius_on_roots(g, r1), r2))
    results.append(_result("mobius_root_covariance", mob, 1e-8))

    tangle = []
    for _ in range(cfg.tangle_trials):
        t = three_tangle(random_state(3, rng))
        if t.tau_decomp is not None:
            tangle.append(max(abs(t.tau_decomp - t.tau_oracle), abs(t.tau_canonical - t.tau_oracle)))
    results.append(_result("three_tangle_oracle_agreement", tangle, 1e-9))
    return results, info
