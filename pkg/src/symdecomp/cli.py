"""Command-line front end.

Every subcommand prints a ``[section]`` / ``key = value`` report on standard
output.  Exit codes: 0 ok, 2 parse error, 3 NonGeneric, 4 SolverFailure,
5 TieBreakUnstable, 1 anything else; the error class name and message go to
standard error.
"""

from __future__ import annotations

import argparse
import csv
import io
import math
import os
import sys
import warnings

import numpy as np

from .canonical import ILCanonicalForm, LUCanonicalForm, canonical_form, form_distance, forms_equal
from .decomp import DEFAULT_TOL, CoherentDecomposition, decompose
from .errors import InsufficientTerms, NonGeneric, SolverFailure, StateFileError, TieBreakUnstable
from .majorana import genericity, majorana_polynomial, majorana_roots
from .measures import schmidt_measure, three_tangle
from .stateio import NormalizationWarning, Report, format_state_file, read_state
from .symstate import is_inf, random_state
from .verify import VerifyConfig, run_properties

EXIT_OK = 0
EXIT_OTHER = 1
EXIT_PARSE = 2
EXIT_NONGENERIC = 3
EXIT_SOLVER = 4
EXIT_TIE = 5

SEED_ENV = "SYMDECOMP_SEED"


def _add_decomposition(rep: Report, d: CoherentDecomposition) -> None:
    rep.section("decomposition")
    rep.add("n_qubits", d.n_qubits)
    rep.add("parity", d.parity)
    rep.add("n_terms", len(d.terms))
    rep.add("A", d.A)
    for i, t in enumerate(d.terms):
        rep.add(f"c[{i}]", t.coefficient)
        rep.add(f"theta[{i}]", t.node.theta)
        rep.add(f"phi[{i}]", t.node.phi)
    rep.add_list("y", d.y)
    rep.add_list("k", d.k)
    if len(d.terms) > 1:
        rep.add("node_overlap_01", abs(np.vdot(d.nodes[0].spinor(), d.nodes[1].spinor())))


def cmd_decompose(args) -> Report:
    s = read_state(args.file)
    d, diag = decompose(s, args.tol, strict_order=args.strict_order)
    rep = Report()
    _add_decomposition(rep, d)
    rep.section("diagnostics")
    rep.add("reconstruction_fidelity_deficit", diag.reconstruction_fidelity_deficit)
    rep.add("max_root_residual", diag.max_root_residual)
    rep.add("value_at_zero_residual", diag.value_at_zero_residual)
    rep.add("max_determinant_residual", diag.max_determinant_residual)
    rep.add("max_derivative_residual", diag.max_derivative_residual)
    rep.add("prony_residual", diag.prony_residual)
    rep.add("hankel_condition", diag.hankel_condition)
    rep.add("attempts", diag.attempts)
    rep.add("candidates", diag.candidates)
    rep.add_list("tied_alternative", diag.alternatives)
    return rep


def cmd_roots(args) -> Report:
    s = read_state(args.file)
    roots = majorana_roots(majorana_polynomial(s))
    g = genericity(s)
    rep = Report().section("roots")
    rep.add("n_qubits", s.n_qubits)
    rep.add("gamma", g.gamma)
    rep.add("generic", g.generic)
    rep.add("parity_rule", g.parity)
    rep.add("distinct", len(roots.roots))
    for i, r in enumerate(roots.roots):
        rep.add(f"root[{i}]", "inf" if is_inf(r.value) else complex(r.value))
        rep.add(f"multiplicity[{i}]", r.multiplicity)
        star = r.star()
        rep.add(f"star_theta[{i}]", star.theta)
        rep.add(f"star_phi[{i}]", star.phi)
    return rep


def _add_form(rep: Report, name: str, form) -> None:
    rep.section(name)
    rep.add("n_qubits", form.n_qubits)
    rep.add("parity", form.parity)
    if isinstance(form, LUCanonicalForm):
        rep.add("mode", "lu")
        rep.add("A", form.A)
        rep.add_list("y", form.y)
        rep.add_list("l", form.phases)
        if form.n_qubits == 3 and form.nodes:
            rep.add("epsilon", form.epsilon)
            rep.add("varphi", form.varphi)
    else:
        rep.add("mode", "il")
        rep.add("A", form.A)
        if form.c is not None:
            rep.add("c", form.c)
            rep.add("lambda", form.lam)
        rep.add_list("lambda_m", form.lambdas)
        rep.add_list("xi", form.xis)
    for i, nd in enumerate(form.nodes):
        rep.add(f"node_theta[{i}]", nd.theta)
        rep.add(f"node_phi[{i}]", nd.phi)
    rep.add_list("parameter", form.parameters())


def cmd_canonical(args) -> Report:
    s = read_state(args.file)
    form, g = canonical_form(s, args.mode)
    rep = Report()
    _add_form(rep, "canonical", form)
    rep.section("map")
    rep.add("kind", g.kind)
    for (i, j), v in np.ndenumerate(g.matrix):
        rep.add(f"g{i}{j}", complex(v))
    rep.add("det", g.det)
    return rep


def cmd_compare(args) -> Report:
    states = [read_state(f) for f in (args.file1, args.file2)]
    if states[0].n_qubits != states[1].n_qubits:
        raise ValueError("states have different qubit numbers")
    forms = []
    for s in states:
        try:
            forms.append(canonical_form(s, args.mode)[0])
        except InsufficientTerms:
            forms.append(None)
    rep = Report().section("comparison")
    rep.add("mode", args.mode)
    if forms[0] is None or forms[1] is None:
        rep.add("equivalent", forms[0] is None and forms[1] is None)
        rep.add("distance", 0.0 if forms[0] is None and forms[1] is None else math.inf)
    else:
        rep.add("equivalent", forms_equal(forms[0], forms[1], args.tol))
        rep.add("distance", form_distance(forms[0], forms[1]))
    rep.add("tol", args.tol)
    for i, f in enumerate(forms, start=1):
        if f is None:
            rep.section(f"form{i}").add("separable", True)
        else:
            _add_form(rep, f"form{i}", f)
    return rep


def cmd_tangle(args) -> Report:
    s = read_state(args.file)
    t = three_tangle(s)
    rep = Report().section("tangle")
    rep.add("tau_decomp", t.tau_decomp)
    rep.add("tau_canonical", t.tau_canonical)
    rep.add("tau_oracle", t.tau_oracle)
    if t.reason:
        rep.add("reason", t.reason)
    return rep


def cmd_schmidt(args) -> Report:
    s = read_state(args.file)
    d, _ = decompose(s)
    r, p = schmidt_measure(d)
    return Report().section("schmidt").add("r", r).add("P", p)


def bloch_rows(d: CoherentDecomposition) -> list[tuple[str, float, float, float, float]]:
    """Node Bloch vectors scaled by ``|c_m|`` relative to the largest term."""
    mags = np.abs(d.coefficients)
    top = mags.max()
    rows = []
    for i, (t, m) in enumerate(zip(d.terms, mags)):
        x, y, z = t.node.bloch_vector() * (m / top)
        rows.append((f"node_{i}", float(x), float(y), float(z), float(m / top)))
    return rows


def cmd_bloch_export(args) -> Report:
    s = read_state(args.file)
    d, _ = decompose(s)
    rows = bloch_rows(d)
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["label", "x", "y", "z", "length"])
    for label, *vals in rows:
        w.writerow([label, *("%.17g" % v for v in vals)])
    with open(args.out, "w", encoding="utf-8") as fh:
        fh.write(buf.getvalue())
    rep = Report().section("bloch_export")
    rep.add("path", args.out)
    rep.add("rows", len(rows))
    return rep


def _seed(value) -> int:
    if value is not None:
        return value
    env = os.environ.get(SEED_ENV)
    if env is None:
        return 0
    try:
        return int(env)
    except ValueError:
        raise ValueError(f"{SEED_ENV}={env!r} is not an integer") from None


def cmd_random(args) -> str:
    if args.n < 2:
        raise ValueError("--n must be at least 2")
    if args.count < 1:
        raise ValueError("--count must be positive")
    seed = _seed(args.seed)
    rng = np.random.default_rng(seed)
    docs = []
    for i in range(args.count):
        s = random_state(args.n, rng)
        docs.append(format_state_file(s, comment=f"random symmetric state, seed {seed}, index {i}"))
    return "\n".join(docs)


def cmd_verify(args) -> tuple[Report, bool]:
    cfg = VerifyConfig(seed=_seed(args.seed), n_max=args.n_max)
    results, info = run_properties(cfg)
    rep = Report().section("verify")
    rep.add("seed", cfg.seed)
    rep.add("n_max", cfg.n_max)
    for r in results:
        rep.section(f"property.{r.name}")
        rep.add("passed", r.passed)
        rep.add("worst", r.worst)
        rep.add("tolerance", r.tolerance)
        rep.add("trials", r.trials)
        rep.add("skipped", r.skipped)
    rep.section("measurements")
    for k, v in info.items():
        rep.add(k, v)
    ok = all(r.passed for r in results)
    rep.section("summary").add("all_passed", ok)
    return rep, ok


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="symdecomp", description="Coherent-state analysis of symmetric qubit states.")
    sub = p.add_subparsers(dest="command", required=True)

    q = sub.add_parser("decompose", help="coherent-state decomposition")
    q.add_argument("file")
    q.add_argument("--tol", type=float, default=DEFAULT_TOL)
    q.add_argument("--strict-order", action="store_true", help="fail on tied coefficient magnitudes")

    q = sub.add_parser("roots", help="Majorana roots and genericity")
    q.add_argument("file")

    q = sub.add_parser("canonical", help="LU or IL canonical form")
    q.add_argument("file")
    q.add_argument("--mode", choices=("lu", "il"), required=True)

    q = sub.add_parser("compare", help="equivalence of two states")
    q.add_argument("file1")
    q.add_argument("file2")
    q.add_argument("--mode", choices=("lu", "il"), required=True)
    q.add_argument("--tol", type=float, default=1e-7)

    q = sub.add_parser("tangle", help="three-tangle of a three-qubit state")
    q.add_argument("file")

    q = sub.add_parser("schmidt", help="Schmidt measure")
    q.add_argument("file")

    q = sub.add_parser("bloch-export", help="node vectors as CSV")
    q.add_argument("file")
    q.add_argument("--out", required=True)

    q = sub.add_parser("random", help="random symmetric states")
    q.add_argument("--n", type=int, required=True)
    q.add_argument("--seed", type=int, default=None)
    q.add_argument("--count", type=int, default=1)

    q = sub.add_parser("verify", help="randomized property checks")
    q.add_argument("--seed", type=int, default=None)
    q.add_argument("--n-max", type=int, default=9)
    return p


_COMMANDS = {
    "decompose": cmd_decompose,
    "roots": cmd_roots,
    "canonical": cmd_canonical,
    "compare": cmd_compare,
    "tangle": cmd_tangle,
    "schmidt": cmd_schmidt,
    "bloch-export": cmd_bloch_export,
}


def _fail(exc: BaseException, code: int) -> int:
    print(f"{type(exc).__name__}: {exc}", file=sys.stderr)
    return code


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        with warnings.catch_warnings():
            warnings.simplefilter("always", NormalizationWarning)
            warnings.showwarning = _show_warning
            if args.command == "random":
                sys.stdout.write(cmd_random(args))
                return EXIT_OK
            if args.command == "verify":
                rep, ok = cmd_verify(args)
                sys.stdout.write(rep.text())
                return EXIT_OK if ok else EXIT_OTHER
            rep = _COMMANDS[args.command](args)
    except StateFileError as exc:
        return _fail(exc, EXIT_PARSE)
    except OSError as exc:
        return _fail(exc, EXIT_PARSE)
    except NonGeneric as exc:
        return _fail(exc, EXIT_NONGENERIC)
    except SolverFailure as exc:
        return _fail(exc, EXIT_SOLVER)
    except TieBreakUnstable as exc:
        return _fail(exc, EXIT_TIE)
    except Exception as exc:  # noqa: BLE001 - mapped to the generic exit code
        return _fail(exc, EXIT_OTHER)
    sys.stdout.write(rep.text())
    return EXIT_OK


def _show_warning(message, category, filename, lineno, file=None, line=None):
    print(f"warning: {message}", file=sys.stderr)


if __name__ == "__main__":
    sys.exit(main())
