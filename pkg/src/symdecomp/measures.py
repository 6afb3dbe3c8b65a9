"""Entanglement quantities read off the coherent decomposition."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .canonical import lu_canonical
from .decomp import CoherentDecomposition, decompose
from .errors import NonGeneric, SolverFailure
from .symstate import SymmetricState, dicke_weights

DEFAULT_ZERO_TOL = 1e-10


@dataclass(frozen=True)
class InvariantSet:
    """``gram[n, m] = e^{i(k_m - k_n)} <phi_n|phi_m>^N`` together with ``y`` and ``A``.

    ``k_0 = 0``; the entries are unchanged by collective unitaries, phases
    included, because the coefficient and spinor phase conventions cancel.
    """

    gram: np.ndarray
    y: np.ndarray
    A: float

    def distance(self, other: "InvariantSet") -> float:
        if self.gram.shape != other.gram.shape:
            return math.inf
        gaps = [abs(self.A - other.A)]
        if self.y.size:
            gaps.append(float(np.abs(self.y - other.y).max()))
        gaps.append(float(np.abs(self.gram - other.gram).max()))
        return max(gaps)


def lu_invariants(d: CoherentDecomposition) -> InvariantSet:
    n = d.n_qubits
    c = d.coefficients
    u = np.array([nd.spinor() for nd in d.nodes])
    phase = np.exp(1j * np.angle(c / c[0]))
    overlaps = (u.conj() @ u.T) ** n
    gram = phase.conj()[:, None] * overlaps * phase[None, :]
    return InvariantSet(gram, np.abs(c[1:] / c[0]), float(abs(c[0])))


def hyperdeterminant(s: SymmetricState) -> complex:
    """Cayley hyperdeterminant of the 2x2x2 amplitude tensor of a three-qubit state."""
    if s.n_qubits != 3:
        raise ValueError("the hyperdeterminant is defined here for three qubits")
    amp = s.dicke / dicke_weights(3)
    t = np.empty((2, 2, 2), dtype=complex)
    for i in range(2):
        for j in range(2):
            for k in range(2):
                t[i, j, k] = amp[i + j + k]
    a = t
    det = (
        a[0, 0, 0] ** 2 * a[1, 1, 1] ** 2
        + a[0, 0, 1] ** 2 * a[1, 1, 0] ** 2
        + a[0, 1, 0] ** 2 * a[1, 0, 1] ** 2
        + a[1, 0, 0] ** 2 * a[0, 1, 1] ** 2
        - 2 * a[0, 0, 0] * a[0, 0, 1] * a[1, 1, 0] * a[1, 1, 1]
        - 2 * a[0, 0, 0] * a[0, 1, 0] * a[1, 0, 1] * a[1, 1, 1]
        - 2 * a[0, 0, 0] * a[0, 1, 1] * a[1, 0, 0] * a[1, 1, 1]
        - 2 * a[0, 0, 1] * a[0, 1, 0] * a[1, 0, 1] * a[1, 1, 0]
        - 2 * a[0, 0, 1] * a[0, 1, 1] * a[1, 1, 0] * a[1, 0, 0]
        - 2 * a[0, 1, 0] * a[0, 1, 1] * a[1, 0, 1] * a[1, 0, 0]
        + 4 * a[0, 0, 0] * a[0, 1, 1] * a[1, 0, 1] * a[1, 1, 0]
        + 4 * a[0, 0, 1] * a[0, 1, 0] * a[1, 0, 0] * a[1, 1, 1]
    )
    return complex(det)


def tangle_from_decomposition(d: CoherentDecomposition) -> float:
    """``4 y^2 (1 - |<phi_0|phi_1>|^2)^3 A^4`` for a three-qubit decomposition."""
    if d.n_qubits != 3:
        raise ValueError("three-tangle needs three qubits")
    if len(d.terms) < 2:
        return 0.0
    c = d.coefficients
    ov = abs(np.vdot(d.nodes[0].spinor(), d.nodes[1].spinor())) ** 2
    y = abs(c[1] / c[0])
    a = abs(c[0])
    return float(4 * y**2 * (1 - ov) ** 3 * a**4)


def tangle_from_lu_parameters(y, epsilon, varphi):
    """Three-tangle of ``A(|111> + y |chi chi chi>)`` with ``chi`` at ``(epsilon, varphi)``.

    Broadcasts over array arguments.
    """
    y = np.asarray(y, dtype=float)
    half = np.asarray(epsilon, dtype=float) / 2
    norm = 1 + y**2 + 2 * y * np.cos(3 * np.asarray(varphi, dtype=float)) * np.sin(half) ** 3
    out = 4 * y**2 * np.cos(half) ** 6 / norm**2
    return out if out.ndim else float(out)


@dataclass(frozen=True)
class TangleResult:
    """The three-tangle by three routes; formula routes are ``None`` when unavailable."""

    tau_decomp: Optional[float]
    tau_canonical: Optional[float]
    tau_oracle: float
    reason: Optional[str] = None


def three_tangle(s: SymmetricState, *, seed: int = 0) -> TangleResult:
    if s.n_qubits != 3:
        raise ValueError(f"three-tangle needs three qubits, got {s.n_qubits}")
    u = s.unit()
    oracle = 4 * abs(hyperdeterminant(u))
    try:
        d, _ = decompose(u, seed=seed)
    except NonGeneric as exc:
        return TangleResult(None, None, oracle, f"NonGeneric: {exc}")
    except SolverFailure as exc:
        return TangleResult(None, None, oracle, f"SolverFailure: {exc}")
    if len(d.terms) < 2:
        return TangleResult(None, None, oracle, "separable: single coherent term")
    form, _ = lu_canonical(u, decomposition=d)
    tau_c = tangle_from_lu_parameters(form.y[0], form.epsilon, form.varphi)
    return TangleResult(tangle_from_decomposition(d), tau_c, oracle)


def schmidt_measure(d: CoherentDecomposition, zero_tol: float = DEFAULT_ZERO_TOL) -> tuple[int, float]:
    """Number of coherent terms with ``|c_m| > zero_tol`` and its base-2 logarithm."""
    r = int(np.sum(np.abs(d.coefficients) > zero_tol))
    return r, math.log2(r)
