"""Decomposition of symmetric states into superpositions of spin coherent states.

Writing each coherent component as ``(|0> + beta|1>)^N`` with weight ``w``,
the rescaled Dicke amplitudes ``mu_k = c_k / d_k`` satisfy

    mu_k = sum_m w_m beta_m^k,        k = 0..N,

so recovering the components is a Prony problem: a Hankel null vector gives
the node polynomial, its roots are the ``beta_m`` and a Vandermonde solve
gives the weights.  Odd ``N`` is exactly determined with ``(N+1)/2`` nodes.
Even ``N`` uses ``N/2 + 1`` nodes; the extra freedom is removed by requiring
two nodes to be antipodal, and among the solutions the one with the largest
leading amplitude is kept.

All solves happen in a randomly rotated frame so that no node sits at the
south pole (``beta = inf``); results are rotated back exactly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import NonGeneric, SolverFailure, TieBreakUnstable
from .majorana import (
    DEFAULT_CLUSTER_TOL,
    RootMultiset,
    generic_bound,
    majorana_polynomial,
    majorana_roots,
    polynomial_roots,
)
from .symstate import (
    CollectiveMap,
    NodeState,
    SymmetricState,
    coherent_amplitudes,
    dicke_weights,
    apply_collective,
    random_unitary,
    rotation_to_south,
    spinor_phase_split,
)

DEFAULT_TOL = 1e-9
TIE_RTOL = 1e-9
RANK_RTOL = 1e-9
GOOD_CONDITION = 1e8
MAX_CONDITION = 1e12
POLE_SNAP = 1e-10


@dataclass(frozen=True)
class CoherentTerm:
    coefficient: complex
    node: NodeState


@dataclass(frozen=True)
class CoherentDecomposition:
    """``|psi> = sum_m c_m |phi_m>^N`` with the ordering conventions applied.

    For even ``N`` the first two terms are the orthogonal pair
    ``(phi_0, phi_0^perp)``.
    """

    n_qubits: int
    terms: tuple[CoherentTerm, ...]

    @property
    def parity(self) -> str:
        return "odd" if self.n_qubits % 2 else "even"

    @property
    def coefficients(self) -> np.ndarray:
        return np.array([t.coefficient for t in self.terms], dtype=complex)

    @property
    def nodes(self) -> list[NodeState]:
        return [t.node for t in self.terms]

    @property
    def has_orthogonal_pair(self) -> bool:
        return self.parity == "even" and len(self.terms) >= 2

    @property
    def A(self) -> complex:
        return self.terms[0].coefficient

    @property
    def y(self) -> np.ndarray:
        c = self.coefficients
        return np.abs(c[1:] / c[0])

    @property
    def k(self) -> np.ndarray:
        """Relative phases ``k_m`` in ``[0, 2 pi)`` with ``c_m = A y_m exp(i k_m)``."""
        c = self.coefficients
        return np.mod(np.angle(c[1:] / c[0]), 2 * math.pi)

    def term_amplitudes(self) -> np.ndarray:
        """Dicke amplitudes of each term, shape ``(len(terms), N+1)``."""
        n = self.n_qubits
        return np.array([t.coefficient * coherent_amplitudes(n, t.node.spinor()) for t in self.terms])


@dataclass(frozen=True)
class DecompositionDiagnostics:
    reconstruction_fidelity_deficit: float
    max_determinant_residual: float
    max_root_residual: float
    value_at_zero_residual: float
    max_derivative_residual: float = 0.0
    prony_residual: float = 0.0
    hankel_condition: float = 1.0
    attempts: int = 0
    candidates: int = 1
    alternatives: tuple = field(default=())


def moments(s: SymmetricState) -> np.ndarray:
    """``mu_k = c_k / d_k``: the weights' power sums ``sum_m w_m beta_m^k``."""
    return s.dicke / dicke_weights(s.n_qubits)


def _hankel(mu: np.ndarray, rows: int, cols: int) -> np.ndarray:
    idx = np.arange(rows)[:, None] + np.arange(cols)[None, :]
    return mu[idx]


def _vandermonde(beta: np.ndarray, n: int) -> np.ndarray:
    return np.power.outer(beta, np.arange(n + 1)).T


def _weights(mu: np.ndarray, beta: np.ndarray) -> np.ndarray:
    n = mu.size - 1
    d = dicke_weights(n)
    v = _vandermonde(beta, n) * d[:, None]
    w, *_ = np.linalg.lstsq(v, mu * d, rcond=None)
    return w


def _model_residual(mu: np.ndarray, w: np.ndarray, beta: np.ndarray) -> np.ndarray:
    n = mu.size - 1
    return dicke_weights(n) * (_vandermonde(beta, n) @ w - mu)


def _gauss_newton(fun, x0: np.ndarray, iters: int = 12) -> tuple[np.ndarray, float]:
    """Minimize ``||R(x, conj x)||`` for complex ``x``.

    ``fun(x)`` returns ``(R, J, M)`` with ``J = dR/dx`` and ``M = dR/d conj(x)``.
    """
    x = x0.copy()
    r, jac, anti = fun(x)
    best = np.linalg.norm(r)
    m = x.size
    for _ in range(iters):
        top = np.hstack([(jac + anti).real, -(jac - anti).imag])
        bot = np.hstack([(jac + anti).imag, (jac - anti).real])
        step, *_ = np.linalg.lstsq(np.vstack([top, bot]), -np.concatenate([r.real, r.imag]), rcond=None)
        dx = step[:m] + 1j * step[m:]
        trial = x + dx
        r_new, j_new, a_new = fun(trial)
        norm_new = np.linalg.norm(r_new)
        if not np.isfinite(norm_new) or norm_new >= best:
            break
        x, r, jac, anti, best = trial, r_new, j_new, a_new, norm_new
        if np.linalg.norm(dx) <= 1e-15 * max(1.0, np.linalg.norm(x)):
            break
    return x, best


def _polish_free(mu: np.ndarray, w: np.ndarray, beta: np.ndarray):
    n = mu.size - 1
    d = dicke_weights(n)
    r = w.size
    k = np.arange(n + 1)

    def fun(x):
        ww, bb = x[:r], x[r:]
        v = _vandermonde(bb, n)
        dv = k[:, None] * np.power.outer(bb, np.maximum(k - 1, 0)).T
        res = d * (v @ ww - mu)
        jac = d[:, None] * np.hstack([v, dv * ww[None, :]])
        return res, jac, np.zeros_like(jac)

    x, _ = _gauss_newton(fun, np.concatenate([w, beta]))
    return x[:r], x[r:]


def _antipode_beta(p: complex) -> complex:
    return -1.0 / np.conj(p)


def _polish_paired(mu: np.ndarray, w: np.ndarray, p: complex, rest: np.ndarray):
    """Refine weights and nodes keeping nodes 0 and 1 antipodal."""
    n = mu.size - 1
    d = dicke_weights(n)
    kk = w.size
    k = np.arange(n + 1)

    def fun(x):
        ww, pp, others = x[:kk], x[kk], x[kk + 1 :]
        bb = np.concatenate([[pp, _antipode_beta(pp)], others])
        v = _vandermonde(bb, n)
        dv = k[:, None] * np.power.outer(bb, np.maximum(k - 1, 0)).T
        res = d * (v @ ww - mu)
        jac = np.zeros((n + 1, x.size), dtype=complex)
        anti = np.zeros_like(jac)
        jac[:, :kk] = d[:, None] * v
        jac[:, kk] = d * ww[0] * dv[:, 0]
        anti[:, kk] = d * ww[1] * dv[:, 1] / np.conj(pp) ** 2
        jac[:, kk + 1 :] = d[:, None] * dv[:, 2:] * ww[None, 2:]
        return res, jac, anti

    x, _ = _gauss_newton(fun, np.concatenate([w, [p], rest]))
    ww, pp, others = x[:kk], x[kk], x[kk + 1 :]
    return ww, np.concatenate([[pp, _antipode_beta(pp)], others])


def _prony_rank(mu: np.ndarray, r: int):
    """Nodes and weights of the ``r``-term fit to all ``N+1`` moments."""
    n = mu.size - 1
    h = _hankel(mu, n + 1 - r, r + 1)
    _, _, vh = np.linalg.svd(h)
    q = vh[-1].conj()
    if abs(q[-1]) < 1e-14 * np.abs(q).max():
        raise SolverFailure("node polynomial lost degree (node at infinity)", float("inf"))
    beta = polynomial_roots(q) if r > 1 else np.array([-q[0] / q[1]])
    w = _weights(mu, beta)
    return _polish_free(mu, w, beta)


def _pencil(mu: np.ndarray):
    """Node polynomials ``A + t B`` of all ``N/2+1``-term fits (even ``N``).

    ``t`` is the undetermined moment ``mu_{N+1}``.  Returns ascending
    coefficient arrays ``A`` (monic, degree K) and ``B`` (degree < K).
    """
    n = mu.size - 1
    kk = n // 2 + 1
    h = _hankel(mu, kk, kk)
    rhs = np.concatenate([mu[kk:], [0.0]])
    e = np.zeros(kk, dtype=complex)
    e[-1] = 1.0
    sol = np.linalg.solve(h, np.column_stack([rhs, e]))
    a = np.concatenate([-sol[:, 0], [1.0]])
    b = np.concatenate([-sol[:, 1], [0.0]])
    return a, b


def _reflect(c: np.ndarray) -> np.ndarray:
    """Coefficients of ``w^K c(-1/w)`` for ``c`` of formal degree ``K``."""
    k = c.size - 1
    return (c * (-1.0) ** np.arange(k + 1))[::-1]


def _pair_equation(a: np.ndarray, b: np.ndarray):
    """``E(p)`` vanishing iff ``p`` and its antipode are roots of one pencil member.

    Returns a callable giving ``E`` and its Wirtinger derivatives with respect
    to ``p`` and ``conj(p)``.
    """
    pv = np.polynomial.polynomial.polyval
    ah, bh = _reflect(a), _reflect(b)
    da, db = np.polynomial.polynomial.polyder(a), np.polynomial.polynomial.polyder(b)
    dah, dbh = np.polynomial.polynomial.polyder(ah), np.polynomial.polynomial.polyder(bh)

    def fun(p):
        q = np.conj(p)
        a_p, b_p, ah_q, bh_q = pv(p, a), pv(p, b), pv(q, ah), pv(q, bh)
        e = a_p * bh_q - ah_q * b_p
        ep = pv(p, da) * bh_q - ah_q * pv(p, db)
        eq = a_p * pv(q, dbh) - pv(q, dah) * b_p
        return e, ep, eq

    return fun


def _antipodal_seeds() -> np.ndarray:
    radii = np.linspace(0.04, 1.0, 12)
    angles = np.linspace(0.0, 2 * math.pi, 32, endpoint=False)
    return (radii[:, None] * np.exp(1j * (angles[None, :] + 0.37 * radii[:, None]))).ravel()


_SEEDS = _antipodal_seeds()


def _pair_points(a: np.ndarray, b: np.ndarray) -> tuple[list[complex], float]:
    """All ``p`` in the closed unit disk solving the antipodal-pair equation."""
    fun = _pair_equation(a, b)
    scale = np.linalg.norm(a) * np.linalg.norm(b)
    p = _SEEDS.copy()
    with np.errstate(all="ignore"):
        for _ in range(80):
            e, ep, eq = fun(p)
            # real 2x2 Jacobian of (Re E, Im E) in (Re p, Im p); on curves of
            # solutions it is singular and a gradient step is taken instead
            j00, j01 = (ep + eq).real, -(ep - eq).imag
            j10, j11 = (ep + eq).imag, (ep - eq).real
            r0, r1 = -e.real, -e.imag
            det = j00 * j11 - j01 * j10
            fro = j00**2 + j01**2 + j10**2 + j11**2
            regular = np.abs(det) > 1e-10 * fro
            safe = np.where(regular, det, 1.0)
            fro = np.where(fro > 0, fro, 1.0)
            dx = np.where(regular, (j11 * r0 - j01 * r1) / safe, (j00 * r0 + j10 * r1) / fro)
            dy = np.where(regular, (j00 * r1 - j10 * r0) / safe, (j01 * r0 + j11 * r1) / fro)
            step = dx + 1j * dy
            step[~np.isfinite(step)] = 0.0
            size = np.abs(step)
            step = np.where(size > 0.3, step * (0.3 / np.maximum(size, 1e-300)), step)
            p = p + step
            out = np.abs(p) > 1.0
            p[out] = _antipode_beta(p[out])
            if np.all(size < 1e-15):
                break
        e, _, _ = fun(p)
    resid = np.abs(e) / scale
    best = float(np.nanmin(resid)) if resid.size else math.inf
    sols: list[complex] = []
    order = np.argsort(resid)
    for z in p[order[resid[order] < 1e-10]]:
        if z == 0:
            continue
        zt = _antipode_beta(z)
        if not any(abs(z - w) < 1e-7 or abs(zt - w) < 1e-7 for w in sols):
            sols.append(complex(z))
    return sols, best


def _paired_candidates(mu: np.ndarray):
    """Fits with ``N/2+1`` nodes of which the first two are antipodal."""
    n = mu.size - 1
    kk = n // 2 + 1
    a, b = _pencil(mu)
    points, best = _pair_points(a, b)
    pv = np.polynomial.polynomial.polyval
    out = []
    for p in points:
        pt = _antipode_beta(p) if p != 0 else None
        if pt is None:
            continue
        bp, bq = pv(p, b), pv(pt, b)
        t = -pv(p, a) / bp if abs(bp) >= abs(bq) else -pv(pt, a) / bq
        q = a + t * b
        roots = polynomial_roots(q)
        used = []
        for target in (p, pt):
            dist = np.abs(roots - target) / (1 + abs(target))
            dist[used] = np.inf
            used.append(int(np.argmin(dist)))
        rest = np.delete(roots, used)
        beta = np.concatenate([[p, pt], rest])
        if rest.size != kk - 2:
            continue
        w = _weights(mu, beta)
        w, beta = _polish_paired(mu, w, beta[0], beta[2:])
        out.append((w, beta))
    return out, best


def _frame_condition(mu: np.ndarray) -> tuple[np.ndarray, int]:
    n = mu.size - 1
    kk = n // 2 + 1
    rows = kk if n % 2 else kk
    cols = kk + 1 if n % 2 else kk
    sv = np.linalg.svd(_hankel(mu, rows, cols), compute_uv=False)
    return sv, min(rows, cols)


@dataclass
class _Solution:
    weights: np.ndarray
    beta: np.ndarray
    paired: bool
    frame: CollectiveMap
    mu: np.ndarray
    condition: float


def _fibonacci_nodes(count: int = 200) -> list[NodeState]:
    i = np.arange(count) + 0.5
    theta = np.arccos(1 - 2 * i / count)
    phi = np.mod(math.pi * (1 + math.sqrt(5)) * i, 2 * math.pi)
    return [NodeState(float(t), float(f)) for t, f in zip(theta, phi)]


_DIRECTIONS = _fibonacci_nodes()


def _frame_spinors(sol: _Solution) -> np.ndarray:
    """Unit spinors of the solution's nodes in the original frame."""
    back = sol.frame.inverse().matrix
    v = back @ np.vstack([np.ones_like(sol.beta), sol.beta])
    return (v / np.linalg.norm(v, axis=0)).T


def _refine(sol: _Solution, s: SymmetricState) -> _Solution:
    """Re-solve in a frame whose south pole is far from every node.

    Large ``|beta|`` makes the power-sum model badly scaled, so the nodes are
    moved to the frame where the closest one to the south pole is as far as
    possible, and weights and nodes are polished there.
    """
    u = _frame_spinors(sol)
    dirs = np.array([d.spinor() for d in _DIRECTIONS])
    gap = np.abs(dirs[:, None, 0] * u[None, :, 1] - dirs[:, None, 1] * u[None, :, 0]).min(axis=1)
    frame = rotation_to_south(_DIRECTIONS[int(np.argmax(gap))])
    v = frame.matrix @ u.T
    beta = v[1] / v[0]
    mu = moments(apply_collective(frame, s))
    w = _weights(mu, beta)
    if sol.paired:
        w, beta = _polish_paired(mu, w, beta[0], beta[2:])
    else:
        w, beta = _polish_free(mu, w, beta)
    return _Solution(w, beta, sol.paired, frame, mu, sol.condition)


def _snap_and_refit(terms: list[CoherentTerm], s: SymmetricState) -> list[CoherentTerm]:
    """Snap nodes within rounding of a pole onto it and refit all coefficients."""
    nodes = []
    for t in terms:
        node = t.node
        if node.theta < POLE_SNAP:
            node = NodeState.north()
        elif math.pi - node.theta < POLE_SNAP:
            node = NodeState.south()
        nodes.append(node)
    n = s.n_qubits
    basis = np.array([coherent_amplitudes(n, nd.spinor()) for nd in nodes]).T
    c, *_ = np.linalg.lstsq(basis, s.dicke, rcond=None)
    # keep exact zeros (padded partners) at zero
    c = np.where([t.coefficient == 0 for t in terms], 0, c)
    return [CoherentTerm(complex(ci), nd) for ci, nd in zip(c, nodes)]


def _terms_in_frame(sol: _Solution, n: int) -> list[CoherentTerm]:
    """Undo the frame rotation and rescale weights to unit-spinor coefficients."""
    back = sol.frame.inverse()
    terms = []
    for w, beta in zip(sol.weights, sol.beta):
        spinor = np.array([1.0, beta], dtype=complex)
        node, scale = spinor_phase_split(back.apply_to_spinor(spinor))
        terms.append(CoherentTerm(complex(w * scale**n), node))
    return terms


def _sort_key(term: CoherentTerm):
    return (-abs(term.coefficient), term.node.theta, term.node.phi)


def _check_ties(terms: list[CoherentTerm], strict: bool):
    mags = [abs(t.coefficient) for t in terms]
    for i in range(len(mags) - 1):
        if abs(mags[i] - mags[i + 1]) <= TIE_RTOL * max(mags[i], 1e-300) and strict:
            raise TieBreakUnstable(
                f"coefficient magnitudes {mags[i]:.17g} and {mags[i + 1]:.17g} coincide"
            )


def _order_free(terms: list[CoherentTerm], strict: bool) -> list[CoherentTerm]:
    terms = sorted(terms, key=_sort_key)
    _check_ties(terms, strict)
    return terms


def _order_paired(terms: list[CoherentTerm], strict: bool) -> list[CoherentTerm]:
    pair = sorted(terms[:2], key=_sort_key)
    rest = sorted(terms[2:], key=_sort_key)
    _check_ties(pair, strict)
    _check_ties(rest, strict)
    return pair + rest


def _antipodal_pairs(terms: list[CoherentTerm], tol: float = 1e-7) -> list[tuple[int, int]]:
    out = []
    for i in range(len(terms)):
        for j in range(i + 1, len(terms)):
            if abs(np.vdot(terms[i].node.spinor(), terms[j].node.spinor())) < tol:
                out.append((i, j))
    return out


def _pair_for_deficient(terms: list[CoherentTerm]) -> list[CoherentTerm]:
    """Give an even-N decomposition with fewer than N/2+1 terms its orthogonal pair."""
    pairs = _antipodal_pairs(terms)
    if pairs:
        i, j = max(pairs, key=lambda ij: max(abs(terms[ij[0]].coefficient), abs(terms[ij[1]].coefficient)))
        rest = [t for m, t in enumerate(terms) if m not in (i, j)]
        return [terms[i], terms[j]] + rest
    lead = min(range(len(terms)), key=lambda m: _sort_key(terms[m]))
    rest = [t for m, t in enumerate(terms) if m != lead]
    partner = CoherentTerm(0j, terms[lead].node.antipode())
    return [terms[lead], partner] + rest


def reconstruct(d: CoherentDecomposition) -> tuple[SymmetricState, float]:
    """Normalized ``sum_m c_m |phi_m>^N`` and its norm before normalization."""
    total = d.term_amplitudes().sum(axis=0)
    norm = float(np.linalg.norm(total))
    return SymmetricState(total / norm), norm


def _homogeneous_values(d: CoherentDecomposition, spinors: np.ndarray, order: int = 0) -> np.ndarray:
    """``sum_m c_m (r.u_m)^(N-j) (r_perp.u_m)^j`` for each root spinor ``r``.

    With ``r ~ (1, alpha)`` the ``j = 0`` value is ``P(alpha)``, the projection
    of the decomposition on the unnormalized coherent state ``|alpha>``; higher
    ``j`` are the transverse derivatives up to constant factors.
    """
    n = d.n_qubits
    u = np.array([t.node.spinor() for t in d.terms])
    c = d.coefficients
    par = spinors[:, 0, None] * u[None, :, 0] + spinors[:, 1, None] * u[None, :, 1]
    perp = -np.conj(spinors[:, 1, None]) * u[None, :, 0] + np.conj(spinors[:, 0, None]) * u[None, :, 1]
    return (par ** (n - order) * perp**order) @ c


def verify_paper_conditions(
    d: CoherentDecomposition, s: SymmetricState, tol: float = DEFAULT_CLUSTER_TOL
) -> DecompositionDiagnostics:
    """Residuals of the root, value-at-zero and determinant conditions.

    * root residual: ``max_i |P(alpha_i)|`` over the Majorana roots of ``s``;
    * value at zero: ``|P(0) - lambda_0|``;
    * determinant residual: for each root beyond the first ``K-1``, the
      determinant of the ``K x K`` matrix ``[(r_i . u_m)^N]`` over the first
      ``K-1`` roots plus that root, divided by the product of its row norms;
    * derivative residual: transverse derivatives of ``P`` of order below the
      multiplicity at each repeated root.

    Values are relative to ``sum_m |c_m|`` so they are scale free.
    """
    if d.n_qubits != s.n_qubits:
        raise ValueError("decomposition and state have different qubit numbers")
    n = d.n_qubits
    s = s.unit()
    scale = float(np.abs(d.coefficients).sum())
    roots: RootMultiset = majorana_roots(majorana_polynomial(s), tol)
    spinors = roots.spinors()
    root_res = float(np.abs(_homogeneous_values(d, spinors)).max()) / scale
    p0 = complex(_homogeneous_values(d, np.array([[1.0, 0.0]], dtype=complex))[0])
    zero_res = abs(p0 - s.dicke[0]) / scale

    deriv = 0.0
    for r in roots.roots:
        if r.multiplicity > 1:
            sp = r.spinor()[None, :]
            for j in range(1, r.multiplicity):
                deriv = max(deriv, abs(complex(_homogeneous_values(d, sp, j)[0])) / scale)

    u = np.array([t.node.spinor() for t in d.terms])
    kk = len(d.terms)
    det_res = 0.0
    if kk > 1:
        rows = (spinors @ u.T) ** n
        for i in range(kk - 1, spinors.shape[0]):
            m = np.vstack([rows[: kk - 1], rows[i : i + 1]])
            bound = np.prod(np.linalg.norm(m, axis=1))
            if bound > 0:
                det_res = max(det_res, abs(np.linalg.det(m)) / bound)

    rec, _ = reconstruct(d)
    deficit = max(0.0, 1.0 - abs(np.vdot(rec.dicke, s.dicke)) ** 2)
    return DecompositionDiagnostics(
        reconstruction_fidelity_deficit=deficit,
        max_determinant_residual=det_res,
        max_root_residual=root_res,
        value_at_zero_residual=zero_res,
        max_derivative_residual=deriv,
    )


def _separable(s: SymmetricState) -> CoherentDecomposition:
    roots = majorana_roots(majorana_polynomial(s), tol=math.inf)
    r = roots.roots[0].spinor()
    # (1 + alpha beta)^N vanishes at alpha = -1/beta
    node = NodeState.from_spinor(np.array([r[1], -r[0]]))
    amp = coherent_amplitudes(s.n_qubits, node.spinor())
    return CoherentDecomposition(s.n_qubits, (CoherentTerm(complex(np.vdot(amp, s.dicke)), node),))


def _choose_frame(s: SymmetricState, rng: np.random.Generator, max_attempts: int):
    best = None
    attempts = 0
    for attempts in range(1, max_attempts + 1):
        frame = random_unitary(rng)
        rotated = apply_collective(frame, s)
        mu = moments(rotated)
        sv, full = _frame_condition(mu)
        cond = sv[0] / sv[full - 1] if sv[full - 1] > 0 else math.inf
        if best is None or cond < best[0]:
            best = (cond, frame, mu, sv, full)
        if cond < GOOD_CONDITION:
            break
    return best, attempts


def _axially_symmetric(roots: RootMultiset, n: int, tol: float) -> bool:
    if n % 2 or len(roots.roots) != 2:
        return False
    if any(r.multiplicity != n // 2 for r in roots.roots):
        return False
    u, v = (r.spinor() for r in roots.roots)
    return abs(np.vdot(u, v)) < tol


def _solve(s: SymmetricState, tol: float, seed: int, max_attempts: int, root_tol: float):
    """Admissible candidates as ``(residual, terms, solution)`` sorted best first.

    Returns ``None`` for a separable state.
    """
    n = s.n_qubits
    if n < 2:
        raise ValueError("decomposition needs at least two qubits")
    roots = majorana_roots(majorana_polynomial(s), root_tol)
    gamma = roots.gamma
    if gamma == n:
        return None
    if gamma > generic_bound(n):
        raise NonGeneric(gamma, n)
    if _axially_symmetric(roots, n, root_tol):
        raise NonGeneric(
            gamma,
            n,
            f"two antipodal Majorana roots of multiplicity {n // 2}: the state is invariant "
            "under rotations about their axis, so no decomposition is unique",
        )

    rng = np.random.default_rng(seed)
    (cond, frame, mu, sv, full), attempts = _choose_frame(s, rng, max_attempts)
    kk = n // 2 + 1
    if cond <= MAX_CONDITION:
        rank = full
    else:
        rank = int(np.sum(sv > RANK_RTOL * sv[0]))
        cond = sv[0] / sv[rank - 1]

    candidates = []
    best_pair_residual = 0.0
    if n % 2 == 0 and rank == kk:
        fits, best_pair_residual = _paired_candidates(mu)
        for w, beta in fits:
            candidates.append(_Solution(w, beta, True, frame, mu, cond))
    else:
        w, beta = _prony_rank(mu, rank)
        candidates.append(_Solution(w, beta, False, frame, mu, cond))

    scored = []
    for sol in candidates:
        sol = _refine(sol, s)
        res = float(np.linalg.norm(_model_residual(sol.mu, sol.weights, sol.beta)))
        terms = _snap_and_refit(_terms_in_frame(sol, n), s)
        if sol.paired:
            terms = _order_paired(terms, strict=False)
        elif n % 2 == 0:
            terms = _pair_for_deficient(sorted(terms, key=_sort_key))
            terms = _order_paired(terms, strict=False)
        else:
            terms = _order_free(terms, strict=False)
        scored.append((res, terms, sol))

    if not scored:
        raise SolverFailure(
            "no decomposition with an orthogonal pair of nodes exists for this state",
            best_pair_residual,
        )
    admissible = [x for x in scored if x[0] <= math.sqrt(tol) * 1e-1]
    if not admissible:
        raise SolverFailure("moment equations not satisfied", min(x[0] for x in scored))

    def rank_key(item):
        _, terms, _ = item
        return (-abs(terms[0].coefficient), [(t.node.theta, t.node.phi) for t in terms])

    admissible.sort(key=rank_key)
    return admissible, attempts, float(cond), len(scored)


def decompose(
    s: SymmetricState,
    tol: float = DEFAULT_TOL,
    *,
    seed: int = 0,
    max_attempts: int = 5,
    strict_order: bool = False,
    root_tol: float = DEFAULT_CLUSTER_TOL,
) -> tuple[CoherentDecomposition, DecompositionDiagnostics]:
    """Decompose a generic symmetric state into spin coherent components.

    Odd ``N`` yields at most ``(N+1)/2`` terms sorted by decreasing
    ``|c_m|``.  Even ``N`` yields at most ``N/2+1`` terms whose first two
    nodes are antipodal, ``|c_0| > |c_1|``, the rest sorted; of all such
    decompositions the one with the largest ``|c_0|`` is returned.

    Equal magnitudes are ordered by node angles, or raise
    :class:`TieBreakUnstable` when ``strict_order`` is set.  The solve frame
    is a seeded random rotation, so results are deterministic in ``seed``.
    """
    s = s.unit()
    n = s.n_qubits
    solved = _solve(s, tol, seed, max_attempts, root_tol)
    if solved is None:
        d = _separable(s)
        return d, verify_paper_conditions(d, s, root_tol)
    admissible, attempts, cond, n_candidates = solved
    res, terms, sol = admissible[0]
    lead = abs(terms[0].coefficient)
    alternatives = tuple(
        abs(t[0].coefficient) for _, t, _ in admissible[1:] if abs(abs(t[0].coefficient) - lead) <= TIE_RTOL * lead
    )
    if sol.paired or n % 2 == 0:
        _order_paired(terms, strict_order)
    else:
        _order_free(terms, strict_order)

    d = CoherentDecomposition(n, tuple(terms))
    diag = verify_paper_conditions(d, s, root_tol)
    diag = DecompositionDiagnostics(
        reconstruction_fidelity_deficit=diag.reconstruction_fidelity_deficit,
        max_determinant_residual=diag.max_determinant_residual,
        max_root_residual=diag.max_root_residual,
        value_at_zero_residual=diag.value_at_zero_residual,
        max_derivative_residual=diag.max_derivative_residual,
        prony_residual=res,
        hankel_condition=cond,
        attempts=attempts,
        candidates=n_candidates,
        alternatives=alternatives,
    )
    if diag.reconstruction_fidelity_deficit > tol:
        raise SolverFailure("reconstruction fidelity below tolerance", diag.reconstruction_fidelity_deficit)
    return d, diag


def paired_decompositions(
    s: SymmetricState,
    tol: float = DEFAULT_TOL,
    *,
    seed: int = 0,
    max_attempts: int = 5,
    root_tol: float = DEFAULT_CLUSTER_TOL,
) -> list[CoherentDecomposition]:
    """Every admissible decomposition found, by decreasing ``|c_0|``.

    For odd ``N`` (and separable states) this is the single decomposition.
    For even ``N`` the orthogonal-pair constraint generally admits several
    solutions; :func:`decompose` returns the first.
    """
    s = s.unit()
    solved = _solve(s, tol, seed, max_attempts, root_tol)
    if solved is None:
        return [_separable(s)]
    out = []
    for _, terms, _ in solved[0]:
        d = CoherentDecomposition(s.n_qubits, tuple(terms))
        rec, _ = reconstruct(d)
        if 1 - abs(np.vdot(rec.dicke, s.dicke)) ** 2 <= tol:
            out.append(d)
    return out
