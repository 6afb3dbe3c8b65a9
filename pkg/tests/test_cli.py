"""End-to-end checks of the command-line tool.

Golden reports live in ``tests/golden``; set ``SYMDECOMP_UPDATE_GOLDEN=1`` to
rewrite them after an intended output change.
"""

import csv
import os
import subprocess
import sys
from pathlib import Path

import numpy as np
import pytest

from symdecomp.stateio import parse_report, parse_state_stream, report_complex

GOLDEN = Path(__file__).parent / "golden"
UPDATE = os.environ.get("SYMDECOMP_UPDATE_GOLDEN") == "1"


def run(*args, env=None):
    full_env = {k: v for k, v in os.environ.items() if k != "SYMDECOMP_SEED"}
    full_env.update(env or {})
    return subprocess.run(
        [sys.executable, "-m", "symdecomp", *map(str, args)],
        capture_output=True,
        text=True,
        env=full_env,
    )


@pytest.mark.parametrize(
    "name, args",
    [
        ("decompose_ghz3", ["decompose", GOLDEN / "ghz3.state"]),
        ("roots_ghz3", ["roots", GOLDEN / "ghz3.state"]),
        ("schmidt_ghz3", ["schmidt", GOLDEN / "ghz3.state"]),
        ("tangle_ghz3", ["tangle", GOLDEN / "ghz3.state"]),
        ("canonical_lu_random5", ["canonical", GOLDEN / "random5.state", "--mode", "lu"]),
        ("canonical_il_random5", ["canonical", GOLDEN / "random5.state", "--mode", "il"]),
        ("decompose_random4", ["decompose", GOLDEN / "random4.state"]),
    ],
)
def test_golden_reports(name, args):
    res = run(*args)
    assert res.returncode == 0, res.stderr
    path = GOLDEN / f"{name}.txt"
    if UPDATE:
        path.write_text(res.stdout)
    assert res.stdout == path.read_text()


def test_decompose_ghz3_values():
    rep = parse_report(run("decompose", GOLDEN / "ghz3.state").stdout)
    assert abs(float(rep["decomposition"]["y[0]"]) - 1) < 1e-10
    assert float(rep["decomposition"]["node_overlap_01"]) < 1e-10


def test_schmidt_ghz3_values():
    rep = parse_report(run("schmidt", GOLDEN / "ghz3.state").stdout)
    assert rep["schmidt"] == {"r": "2", "P": "1"}


def test_w3_exit_code():
    res = run("decompose", GOLDEN / "w3.state")
    assert res.returncode == 3
    assert res.stderr.startswith("NonGeneric:")
    assert "gamma=2" in res.stderr
    assert res.stdout == ""


def test_strict_order_exit_code():
    res = run("decompose", GOLDEN / "ghz3.state", "--strict-order")
    assert res.returncode == 5
    assert res.stderr.startswith("TieBreakUnstable:")


def test_parse_error_exit_code():
    res = run("decompose", GOLDEN / "missing.state")
    assert res.returncode == 2
    assert "missing index 2" in res.stderr
    res = run("decompose", GOLDEN / "no-such.state")
    assert res.returncode == 2


def test_tangle_rejects_other_sizes():
    res = run("tangle", GOLDEN / "random5.state")
    assert res.returncode == 1
    assert "three qubits" in res.stderr


def test_normalization_warning(tmp_path):
    f = tmp_path / "big.state"
    f.write_text("N 3\n0 1 0\n1 0 0\n2 0 0\n3 1 0\n")
    res = run("schmidt", f)
    assert res.returncode == 0
    assert "warning:" in res.stderr


def test_compare(tmp_path):
    rep = parse_report(run("compare", GOLDEN / "ghz3.state", GOLDEN / "ghz3.state", "--mode", "lu").stdout)
    assert rep["comparison"]["equivalent"] == "true"
    res = run("compare", GOLDEN / "ghz3.state", GOLDEN / "random5.state", "--mode", "il")
    assert res.returncode == 1
    other = tmp_path / "r3.state"
    other.write_text(run("random", "--n", 3, "--seed", 4).stdout)
    rep = parse_report(run("compare", GOLDEN / "ghz3.state", other, "--mode", "il").stdout)
    assert rep["comparison"]["equivalent"] == "true"


def test_canonical_map_has_unit_determinant():
    rep = parse_report(run("canonical", GOLDEN / "random5.state", "--mode", "il").stdout)
    assert abs(report_complex(rep["map"]["det"]) - 1) < 1e-12


def test_random_is_deterministic():
    a = run("random", "--n", 6, "--seed", 11, "--count", 3).stdout
    b = run("random", "--n", 6, "--seed", 11, "--count", 3).stdout
    assert a == b
    states = parse_state_stream(a)
    assert len(states) == 3 and all(s.n_qubits == 6 for s in states)
    assert not np.array_equal(states[0].dicke, states[1].dicke)


def test_random_seed_from_environment():
    a = run("random", "--n", 4, env={"SYMDECOMP_SEED": "5"}).stdout
    b = run("random", "--n", 4, "--seed", 5).stdout
    assert a == b


def test_random_states_decompose(tmp_path):
    f = tmp_path / "r.state"
    f.write_text(run("random", "--n", 7, "--seed", 2).stdout)
    assert run("decompose", f).returncode == 0


def test_bloch_export(tmp_path):
    out = tmp_path / "nodes.csv"
    res = run("bloch-export", GOLDEN / "random5.state", "--out", out)
    assert res.returncode == 0, res.stderr
    rows = list(csv.DictReader(out.open()))
    assert list(rows[0]) == ["label", "x", "y", "z", "length"]
    terms = int(parse_report(run("decompose", GOLDEN / "random5.state").stdout)["decomposition"]["n_terms"])
    assert len(rows) == terms
    assert float(rows[0]["length"]) == 1.0
    for r in rows:
        v = np.array([float(r["x"]), float(r["y"]), float(r["z"])])
        assert np.linalg.norm(v) <= 1 + 1e-12
        assert abs(np.linalg.norm(v) - float(r["length"])) < 1e-12


def test_verify_command():
    res = run("verify", "--seed", 1, "--n-max", 5)
    assert res.returncode == 0, res.stdout
    rep = parse_report(res.stdout)
    assert rep["summary"]["all_passed"] == "true"
    assert rep["property.three_tangle_oracle_agreement"]["passed"] == "true"
