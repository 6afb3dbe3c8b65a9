"""Text formats: state files and key-value reports.

State file::

    # optional comments
    N 3
    0 0.70710678118654757 0
    1 0 0
    2 0 0
    3 0.70710678118654757 0

Report::

    [decomposition]
    n_qubits = 3
    A = 0.70710678118654757 0
    y[0] = 1

Numbers are written with 17 significant digits so that files and reports
round-trip exactly.
"""

from __future__ import annotations

import math
import numbers
import warnings
from typing import Iterable

import numpy as np

from .errors import StateFileError
from .symstate import SymmetricState

NORM_SILENT = 1e-12
NORM_WARN = 1e-6


class NormalizationWarning(UserWarning):
    pass


def fmt_real(x: float) -> str:
    x = float(x)
    if x == 0.0:
        return "0"
    return "%.17g" % x


def fmt_value(v) -> str:
    if isinstance(v, bool) or isinstance(v, np.bool_):
        return "true" if v else "false"
    if v is None:
        return "none"
    if isinstance(v, numbers.Integral):
        return str(int(v))
    if isinstance(v, numbers.Real):
        return fmt_real(v)
    if isinstance(v, numbers.Complex):
        return f"{fmt_real(v.real)} {fmt_real(v.imag)}"
    return str(v)


def _data_lines(text: str):
    for no, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        yield no, line


def _parse_block(rows: list[tuple[int, str]]) -> SymmetricState:
    no, head = rows[0]
    parts = head.split()
    if len(parts) != 2 or parts[0] != "N":
        raise StateFileError(f"expected 'N <integer>', got {head!r}", no)
    try:
        n = int(parts[1])
    except ValueError:
        raise StateFileError(f"qubit number {parts[1]!r} is not an integer", no) from None
    if n < 2:
        raise StateFileError(f"need at least 2 qubits, got N={n}", no)
    amps: dict[int, complex] = {}
    for no, line in rows[1:]:
        parts = line.split()
        if len(parts) != 3:
            raise StateFileError(f"expected 'k <re> <im>', got {line!r}", no)
        try:
            k = int(parts[0])
        except ValueError:
            raise StateFileError(f"index {parts[0]!r} is not an integer", no) from None
        try:
            re, im = float(parts[1]), float(parts[2])
        except ValueError:
            raise StateFileError(f"malformed number in {line!r}", no) from None
        if not (math.isfinite(re) and math.isfinite(im)):
            raise StateFileError("amplitudes must be finite", no)
        if not 0 <= k <= n:
            raise StateFileError(f"index {k} outside 0..{n}", no)
        if k in amps:
            raise StateFileError(f"duplicate index {k}", no)
        amps[k] = complex(re, im)
    missing = [k for k in range(n + 1) if k not in amps]
    if missing:
        raise StateFileError(f"missing index {', '.join(map(str, missing))}", rows[-1][0])
    c = np.array([amps[k] for k in range(n + 1)])
    norm = float(np.linalg.norm(c))
    if norm == 0.0:
        raise StateFileError("all amplitudes are zero", rows[0][0])
    dev = abs(norm - 1.0)
    if dev > NORM_WARN:
        warnings.warn(f"state norm {norm:.17g} rescaled to 1", NormalizationWarning, stacklevel=3)
    if dev > NORM_SILENT:
        c = c / norm
    return SymmetricState(c)


def parse_state_stream(text: str) -> list[SymmetricState]:
    """All states in a text holding one or more state files back to back."""
    blocks: list[list[tuple[int, str]]] = []
    for no, line in _data_lines(text):
        if line.split()[0] == "N":
            blocks.append([])
        elif not blocks:
            raise StateFileError(f"expected 'N <integer>' before data, got {line!r}", no)
        blocks[-1].append((no, line))
    if not blocks:
        raise StateFileError("no state found")
    return [_parse_block(b) for b in blocks]


def parse_state_file(text: str) -> SymmetricState:
    states = parse_state_stream(text)
    if len(states) != 1:
        raise StateFileError(f"expected one state, found {len(states)}")
    return states[0]


def read_state(path: str) -> SymmetricState:
    with open(path, encoding="utf-8") as fh:
        return parse_state_file(fh.read())


def format_state_file(s: SymmetricState, comment: str | None = None) -> str:
    lines = [f"# {c}" for c in comment.splitlines()] if comment else []
    lines.append(f"N {s.n_qubits}")
    for k, c in enumerate(s.dicke):
        lines.append(f"{k} {fmt_real(c.real)} {fmt_real(c.imag)}")
    return "\n".join(lines) + "\n"


class Report:
    """Ordered ``[section]`` / ``key = value`` document."""

    def __init__(self):
        self.sections: list[tuple[str, list[tuple[str, str]]]] = []

    def section(self, name: str) -> "Report":
        self.sections.append((name, []))
        return self

    def add(self, key: str, value) -> "Report":
        if not self.sections:
            raise ValueError("add a section first")
        self.sections[-1][1].append((key, fmt_value(value)))
        return self

    def add_list(self, key: str, values: Iterable) -> "Report":
        for i, v in enumerate(values):
            self.add(f"{key}[{i}]", v)
        return self

    def text(self) -> str:
        out = []
        for name, items in self.sections:
            out.append(f"[{name}]")
            out.extend(f"{k} = {v}" for k, v in items)
            out.append("")
        return "\n".join(out)


def parse_report(text: str) -> dict[str, dict[str, str]]:
    """Sections of a report as ``{section: {key: raw value}}``."""
    out: dict[str, dict[str, str]] = {}
    current = None
    for no, line in _data_lines(text):
        if line.startswith("[") and line.endswith("]"):
            current = line[1:-1]
            out.setdefault(current, {})
            continue
        if current is None or " = " not in line:
            raise ValueError(f"line {no}: unexpected {line!r}")
        key, value = line.split(" = ", 1)
        out[current][key] = value
    return out


def report_complex(value: str) -> complex:
    re, im = value.split()
    return complex(float(re), float(im))
