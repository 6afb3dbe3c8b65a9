"""Canonical forms under collective unitary (LU) and invertible (IL) maps.

LU form, odd ``N``::

    A (|1...1> + y_1 |X_1> + sum_{m>=2} y_m e^{i l_m} |X_m>)

and for even ``N`` the second term is ``y_1 |0...0>``.  The leading node is
rotated to the south pole, the residual rotation about the z axis removes the
phase of the ``y_1`` term and the global phase makes ``A`` positive.  The
rotation angle is fixed only modulo ``2 pi / N``; the branch is chosen so that
the azimuth of the first non-polar node lies in ``[0, 2 pi / N)``.

IL form, odd ``N``::

    A (|0...0> + |1...1> + sum_{m>=2} lambda_m e^{i xi_m} |Xi_m>)

obtained by a unit-determinant map sending two decomposition terms, with
their coefficients, to ``|0...0>`` and ``|1...1>``.  The map depends on which
two terms are used and on an N-th root; every choice is enumerated and the
smallest form in a fixed total order is kept, which makes the form a function
of the IL orbit.

IL form, even ``N``::

    A (|0...0> + |1...1> + lambda |c>^N + sum_{m>=3} lambda_m e^{i xi_m} |Xi_m>)

with ``|c> = (|0> + c|1>)/sqrt(1+|c|^2)``, built from the partner of the
orthogonal pair and the third term.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .decomp import CoherentDecomposition, CoherentTerm, decompose
from .errors import InsufficientTerms
from .symstate import (
    UNIT_DETERMINANT,
    UNITARY,
    CollectiveMap,
    NodeState,
    SymmetricState,
    chordal_distance,
    coherent_amplitudes,
    rotation_to_south,
    spinor_phase_split,
)

TWO_PI = 2 * math.pi
DEFAULT_FORM_TOL = 1e-7
KEY_RTOL = 1e-9


def _circle_gap(a: float, b: float) -> float:
    d = (a - b) % TWO_PI
    return min(d, TWO_PI - d)


@dataclass(frozen=True)
class LUCanonicalForm:
    """Parameters of the LU canonical state.

    ``phases`` holds ``l_m`` for ``m >= 2`` and ``nodes`` the ``X_m``
    (``m >= 1`` for odd ``N``, ``m >= 2`` for even ``N``).
    """

    n_qubits: int
    A: float
    y: tuple[float, ...]
    phases: tuple[float, ...]
    nodes: tuple[NodeState, ...]
    decomposition: Optional[CoherentDecomposition] = field(default=None, compare=False, repr=False)

    @property
    def parity(self) -> str:
        return "odd" if self.n_qubits % 2 else "even"

    @property
    def epsilon(self) -> float:
        """Polar angle of ``X_1`` (three qubits)."""
        self._require_three()
        return self.nodes[0].theta

    @property
    def varphi(self) -> float:
        """Azimuth of ``X_1`` (three qubits)."""
        self._require_three()
        return self.nodes[0].phi

    def _require_three(self):
        if self.n_qubits != 3 or not self.nodes:
            raise ValueError("(y, epsilon, varphi) exist only for entangled three-qubit forms")

    def parameters(self) -> np.ndarray:
        """``y``, then ``l_m``, then ``(theta, phi)`` of every node."""
        ang = [v for nd in self.nodes for v in (nd.theta, nd.phi)]
        return np.array([*self.y, *self.phases, *ang], dtype=float)

    def terms(self) -> list[CoherentTerm]:
        n = self.n_qubits
        out = [CoherentTerm(complex(self.A), NodeState.south())]
        if not self.y:
            return out
        first = NodeState.north() if n % 2 == 0 else self.nodes[0]
        out.append(CoherentTerm(complex(self.A * self.y[0]), first))
        rest = self.nodes if n % 2 == 0 else self.nodes[1:]
        for ym, lm, nd in zip(self.y[1:], self.phases, rest):
            out.append(CoherentTerm(complex(self.A * ym * np.exp(1j * lm)), nd))
        return out

    def state(self) -> SymmetricState:
        n = self.n_qubits
        return SymmetricState(sum(t.coefficient * coherent_amplitudes(n, t.node.spinor()) for t in self.terms()))


@dataclass(frozen=True)
class ILCanonicalForm:
    """Parameters of the IL canonical state; ``A`` is the positive normalization.

    For even ``N``, ``c`` and ``lam`` describe the ``lambda |c>^N`` term and
    the lists cover ``m >= 3``; for odd ``N`` they cover ``m >= 2``.
    """

    n_qubits: int
    A: complex
    lambdas: tuple[float, ...]
    xis: tuple[float, ...]
    nodes: tuple[NodeState, ...]
    c: Optional[complex] = None
    lam: Optional[complex] = None
    decomposition: Optional[CoherentDecomposition] = field(default=None, compare=False, repr=False)

    @property
    def parity(self) -> str:
        return "odd" if self.n_qubits % 2 else "even"

    def parameters(self) -> np.ndarray:
        """Even: ``Re c, Im c, Re lam, Im lam``; then ``lambda_m``, ``xi_m`` and node angles."""
        head = [] if self.c is None else [self.c.real, self.c.imag, self.lam.real, self.lam.imag]
        ang = [v for nd in self.nodes for v in (nd.theta, nd.phi)]
        return np.array([*head, *self.lambdas, *self.xis, *ang], dtype=float)

    def terms(self) -> list[CoherentTerm]:
        out = [CoherentTerm(complex(self.A), NodeState.north()), CoherentTerm(complex(self.A), NodeState.south())]
        if self.c is not None:
            out.append(CoherentTerm(complex(self.A * self.lam), NodeState.from_spinor([1.0, self.c])))
        for lm, xm, nd in zip(self.lambdas, self.xis, self.nodes):
            out.append(CoherentTerm(complex(self.A * lm * np.exp(1j * xm)), nd))
        return out

    def state(self) -> SymmetricState:
        n = self.n_qubits
        return SymmetricState(sum(t.coefficient * coherent_amplitudes(n, t.node.spinor()) for t in self.terms()))


def _rz(chi: float) -> np.ndarray:
    return np.diag([np.exp(-0.5j * chi), np.exp(0.5j * chi)])


def _transform_terms(g: np.ndarray, terms, n: int) -> list[CoherentTerm]:
    out = []
    for t in terms:
        node, scale = spinor_phase_split(g @ t.node.spinor())
        out.append(CoherentTerm(t.coefficient * scale**n, node))
    return out


def _is_pole(node: NodeState, tol: float = 1e-9) -> bool:
    return node.theta < tol or math.pi - node.theta < tol


def lu_canonical(
    s: SymmetricState, *, seed: int = 0, decomposition: CoherentDecomposition | None = None
) -> tuple[LUCanonicalForm, CollectiveMap]:
    """LU canonical form of ``s`` and the unitary that brings ``s`` to it.

    A precomputed ``decomposition`` of ``s`` may be passed to skip the solve.
    """
    d = decomposition if decomposition is not None else decompose(s, seed=seed)[0]
    n = d.n_qubits
    r0 = rotation_to_south(d.terms[0].node).matrix
    terms = _transform_terms(r0, d.terms, n)
    if len(terms) == 1:
        c0 = terms[0].coefficient
        return LUCanonicalForm(n, abs(c0), (), (), (), d), CollectiveMap(r0, UNITARY)

    chi0 = float(np.angle(terms[1].coefficient / terms[0].coefficient)) / n
    # for even N the partner of the leading node is the north pole
    free = terms[2:] if n % 2 == 0 else terms[1:]
    lead = next((t.node for t in free if not _is_pole(t.node)), None)
    k = 0
    if lead is not None:
        # rotating by chi adds chi to every azimuth
        base = (lead.phi + chi0) % TWO_PI
        k = -int(math.floor(base * n / TWO_PI)) % n
    chi = chi0 + TWO_PI * k / n
    g = _rz(chi) @ r0
    terms = _transform_terms(_rz(chi), terms, n)
    c0 = terms[0].coefficient
    phase = c0 / abs(c0)
    a = abs(c0)
    y = tuple(abs(t.coefficient) / a for t in terms[1:])
    phases = tuple(float(np.angle(t.coefficient / phase)) % TWO_PI for t in terms[2:])
    nodes = tuple(t.node for t in (terms[2:] if n % 2 == 0 else terms[1:]))
    return LUCanonicalForm(n, a, y, phases, nodes, d), CollectiveMap(g, UNITARY)


def _normalization(n: int, coeffs, nodes) -> float:
    v = sum(c * coherent_amplitudes(n, nd.spinor()) for c, nd in zip(coeffs, nodes))
    return 1.0 / float(np.linalg.norm(v))


def _lex_key_less(a: list[float], b: list[float]) -> bool:
    for x, z in zip(a, b):
        if abs(x - z) > KEY_RTOL * max(1.0, abs(x), abs(z)):
            return x < z
    return False


def _pair_map(ui, uj, ci, cj, n: int, branch: int) -> tuple[np.ndarray, complex]:
    """Unit-determinant ``G`` with ``c_i (G u_i)^N = c_j (G u_j)^N = s`` along the two axes."""
    delta = ui[0] * uj[1] - ui[1] * uj[0]
    rho_2n = cj * delta**n / ci
    rho = abs(rho_2n) ** (1.0 / (2 * n)) * np.exp(1j * (np.angle(rho_2n) + TWO_PI * branch) / (2 * n))
    rho_j = delta / rho
    ginv = np.column_stack([ui / rho, uj / rho_j])
    g = np.linalg.inv(ginv)
    # exact unit determinant up to rounding
    g = g / np.sqrt(np.linalg.det(g))
    return g, ci * rho**n


def _odd_candidate(d: CoherentDecomposition, i: int, j: int, branch: int):
    n = d.n_qubits
    ti, tj = d.terms[i], d.terms[j]
    g, s = _pair_map(ti.node.spinor(), tj.node.spinor(), ti.coefficient, tj.coefficient, n, branch)
    rest = [t for m, t in enumerate(d.terms) if m not in (i, j)]
    moved = _transform_terms(g, rest, n)
    vals = [(abs(t.coefficient / s), float(np.angle(t.coefficient / s)) % TWO_PI, t.node) for t in moved]
    vals.sort(key=lambda v: (-v[0], v[2].theta, v[2].phi))
    key = [x for lm, xi, nd in vals for x in (-lm, nd.theta, nd.phi, xi)]
    return key, g, vals


def il_canonical(
    s: SymmetricState, *, seed: int = 0, decomposition: CoherentDecomposition | None = None
) -> tuple[ILCanonicalForm, CollectiveMap]:
    """IL canonical form of ``s`` and the unit-determinant map reaching it."""
    d = decomposition if decomposition is not None else decompose(s, seed=seed)[0]
    n = d.n_qubits
    if n < 3:
        raise ValueError("IL canonical forms need at least three qubits")
    terms = [t for t in d.terms if t.coefficient != 0]
    if n % 2:
        if len(terms) < 2:
            raise InsufficientTerms("a single coherent term has no IL canonical form of this shape")
        d_nz = CoherentDecomposition(n, tuple(terms))
        best = None
        for i in range(len(terms)):
            for j in range(len(terms)):
                if i == j:
                    continue
                for b in range(n):
                    cand = _odd_candidate(d_nz, i, j, b)
                    if best is None or _lex_key_less(cand[0], best[0]):
                        best = cand
        _, g, vals = best
        lambdas = tuple(v[0] for v in vals)
        xis = tuple(v[1] for v in vals)
        nodes = tuple(v[2] for v in vals)
        coeffs = [1.0, 1.0] + [lm * np.exp(1j * xi) for lm, xi in zip(lambdas, xis)]
        a = _normalization(n, coeffs, [NodeState.north(), NodeState.south(), *nodes])
        form = ILCanonicalForm(n, complex(a), lambdas, xis, nodes, decomposition=d)
        return form, CollectiveMap(g, UNIT_DETERMINANT)
    return _il_even(d)


def _il_even(d: CoherentDecomposition) -> tuple[ILCanonicalForm, CollectiveMap]:
    n = d.n_qubits
    if len(d.terms) < 3 or any(t.coefficient == 0 for t in d.terms[:3]):
        raise InsufficientTerms("even IL canonical form needs three nonzero coherent terms")
    t0, t1, t2 = d.terms[:3]
    best = None
    for b in range(2 * n):
        g, s = _pair_map(t1.node.spinor(), t2.node.spinor(), t1.coefficient, t2.coefficient, n, b)
        x, yv = g @ t0.node.spinor()
        c = yv / x
        score = np.angle(c) % TWO_PI
        if best is None or score < best[0]:
            best = (score, g, s, c, x)
    _, g, s, c, x = best
    lam = t0.coefficient * x**n * (1 + abs(c) ** 2) ** (n / 2) / s
    moved = _transform_terms(g, d.terms[3:], n)
    vals = [(abs(t.coefficient / s), float(np.angle(t.coefficient / s)) % TWO_PI, t.node) for t in moved]
    vals.sort(key=lambda v: (-v[0], v[1], v[2].theta, v[2].phi))
    lambdas = tuple(v[0] for v in vals)
    xis = tuple(v[1] for v in vals)
    nodes = tuple(v[2] for v in vals)
    cnode = NodeState.from_spinor([1.0, c])
    coeffs = [1.0, 1.0, lam] + [lm * np.exp(1j * xi) for lm, xi in zip(lambdas, xis)]
    a = _normalization(n, coeffs, [NodeState.north(), NodeState.south(), cnode, *nodes])
    form = ILCanonicalForm(n, complex(a), lambdas, xis, nodes, complex(c), complex(lam), d)
    return form, CollectiveMap(g, UNIT_DETERMINANT)


def parametric_relation(d: CoherentDecomposition) -> tuple[complex, complex]:
    """``(c^N, lambda)`` of the even IL form predicted from the decomposition angles.

    With ``c'_m = c_m / c_0``, ``(theta_0, phi_0)`` the leading node and
    ``(theta_2, phi_2)`` the third node::

        Gamma = e^{i phi_0} sin(t0/2) cos(t2/2) - e^{i phi_2} cos(t0/2) sin(t2/2)
        Den   = e^{i phi_0} cos(t0/2) cos(t2/2) + e^{i phi_2} sin(t0/2) sin(t2/2)
        c^N    = e^{i N phi_0} (c'_1 / c'_2) / Gamma^N
        lambda = (1 + |c|^2)^{N/2} Gamma^N / (c'_1 Den^N)

    ``c^N`` is returned rather than ``c`` because ``c`` is fixed only up to an
    N-th root of unity.
    """
    n = d.n_qubits
    if n % 2 or len(d.terms) < 3:
        raise ValueError("the relation applies to even decompositions with at least three terms")
    c = d.coefficients
    c1, c2 = c[1] / c[0], c[2] / c[0]
    th0, ph0 = d.terms[0].node.theta, d.terms[0].node.phi
    th2, ph2 = d.terms[2].node.theta, d.terms[2].node.phi
    e0, e2 = np.exp(1j * ph0), np.exp(1j * ph2)
    s0, k0, s2, k2 = math.sin(th0 / 2), math.cos(th0 / 2), math.sin(th2 / 2), math.cos(th2 / 2)
    gamma = e0 * s0 * k2 - e2 * k0 * s2
    den = e0 * k0 * k2 + e2 * s0 * s2
    c_n = np.exp(1j * n * ph0) * (c1 / c2) / gamma**n
    lam = (1 + abs(c_n) ** (2.0 / n)) ** (n / 2) * gamma**n / (c1 * den**n)
    return complex(c_n), complex(lam)


def parametric_relation_residual(form: ILCanonicalForm) -> float:
    """Relative mismatch between the form's ``(c, lambda)`` and :func:`parametric_relation`."""
    if form.c is None or form.decomposition is None:
        raise ValueError("form has no (c, lambda) pair")
    n = form.n_qubits
    c_n, lam = parametric_relation(form.decomposition)
    r1 = abs(form.c**n - c_n) / max(abs(c_n), 1e-300)
    r2 = abs(form.lam - lam) / max(abs(lam), 1e-300)
    return float(max(r1, r2))


def _node_gap(a: NodeState, b: NodeState) -> float:
    return chordal_distance(a.spinor(), b.spinor())


def _rel(a: float, b: float) -> float:
    return abs(a - b) / max(abs(a), abs(b), 1e-300)


def form_distance(f1, f2) -> float:
    """Largest parameter mismatch between two canonical forms of the same kind.

    Magnitudes are compared relatively, phases on the circle and nodes by
    chordal distance.  Forms of different shape are infinitely far apart.
    """
    if type(f1) is not type(f2) or f1.n_qubits != f2.n_qubits:
        return math.inf
    if isinstance(f1, LUCanonicalForm):
        if len(f1.y) != len(f2.y):
            return math.inf
        gaps = [_rel(f1.A, f2.A)]
        gaps += [_rel(a, b) for a, b in zip(f1.y, f2.y)]
        gaps += [_circle_gap(a, b) for a, b in zip(f1.phases, f2.phases)]
        gaps += [_node_gap(a, b) for a, b in zip(f1.nodes, f2.nodes)]
        return max(gaps)
    if len(f1.lambdas) != len(f2.lambdas) or (f1.c is None) != (f2.c is None):
        return math.inf
    gaps = [_rel(abs(f1.A), abs(f2.A))]
    if f1.c is not None:
        gaps.append(abs(f1.c - f2.c) / max(1.0, abs(f1.c)))
        gaps.append(abs(f1.lam - f2.lam) / max(abs(f1.lam), abs(f2.lam), 1e-300))
    gaps += [_rel(a, b) for a, b in zip(f1.lambdas, f2.lambdas)]
    gaps += [_circle_gap(a, b) for a, b in zip(f1.xis, f2.xis)]
    gaps += [_node_gap(a, b) for a, b in zip(f1.nodes, f2.nodes)]
    return max(gaps)


def forms_equal(f1, f2, tol: float = DEFAULT_FORM_TOL) -> bool:
    return form_distance(f1, f2) <= tol


def canonical_form(s: SymmetricState, mode: str, *, seed: int = 0):
    mode = mode.lower()
    if mode == "lu":
        return lu_canonical(s, seed=seed)
    if mode == "il":
        return il_canonical(s, seed=seed)
    raise ValueError(f"unknown mode {mode!r}; expected 'lu' or 'il'")


def equivalent(s1: SymmetricState, s2: SymmetricState, mode: str = "lu", tol: float = DEFAULT_FORM_TOL,
               *, seed: int = 0) -> bool:
    """Whether two states share a canonical form under ``mode`` ('lu' or 'il').

    Under IL maps all product states form one class, so two separable states
    are equivalent and a separable state is never equivalent to an entangled
    one.
    """
    if s1.n_qubits != s2.n_qubits:
        raise ValueError("states have different qubit numbers")
    forms = []
    for s in (s1, s2):
        try:
            forms.append(canonical_form(s, mode, seed=seed)[0])
        except InsufficientTerms:
            forms.append(None)
    if forms[0] is None or forms[1] is None:
        return forms[0] is None and forms[1] is None
    return forms_equal(forms[0], forms[1], tol)

