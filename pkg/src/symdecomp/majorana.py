"""Majorana polynomial, its roots on the Riemann sphere, and genericity.

The Majorana polynomial of a state is ``Psi(alpha) = sum_k lambda_k alpha^k``
with ``lambda_k = d_k c_k``.  A degree deficit ``N - deg`` is accounted for by
roots at infinity.  Roots are handled internally as unit spinors
``(r0, r1) ~ (1, alpha)`` so that infinity is an ordinary point.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.cluster.hierarchy import linkage
from scipy.optimize import linear_sum_assignment
from scipy.spatial.distance import squareform

from .symstate import (
    INF,
    CollectiveMap,
    NodeState,
    SymmetricState,
    dicke_weights,
    is_inf,
)

DEFAULT_CLUSTER_TOL = 1e-6
_MERGE_BACKWARD = 1e-13
_MERGE_MAX_DIST = 0.5


@dataclass(frozen=True)
class MajoranaPoly:
    coeffs: np.ndarray  # lambda_k, ascending powers of alpha
    n_qubits: int

    def __post_init__(self):
        c = np.array(self.coeffs, dtype=complex)
        if c.size != self.n_qubits + 1:
            raise ValueError("need N+1 coefficients")
        c.setflags(write=False)
        object.__setattr__(self, "coeffs", c)

    def _support(self) -> tuple[int, int]:
        mag = np.abs(self.coeffs)
        if mag.max() == 0:
            raise ValueError("zero polynomial has no roots")
        nz = np.nonzero(mag)[0]
        return int(nz[0]), int(nz[-1])

    @property
    def degree(self) -> int:
        return self._support()[1]

    def __call__(self, alpha):
        return np.polynomial.polynomial.polyval(alpha, self.coeffs)


def majorana_polynomial(s: SymmetricState) -> MajoranaPoly:
    return MajoranaPoly(dicke_weights(s.n_qubits) * s.dicke, s.n_qubits)


def _newton_ratio(c: np.ndarray, z: np.ndarray) -> np.ndarray:
    """``p(z) / p'(z)`` evaluated stably on both sides of the unit circle."""
    n = c.size - 1
    out = np.empty_like(z)
    inside = np.abs(z) <= 1
    if inside.any():
        zi = z[inside]
        p = np.zeros_like(zi)
        dp = np.zeros_like(zi)
        for ck in c[::-1]:
            dp = dp * zi + p
            p = p * zi + ck
        out[inside] = p / dp
    if (~inside).any():
        w = 1.0 / z[~inside]
        # p(z) = z^n r(w) with r the reversed polynomial
        q = np.zeros_like(w)
        dq = np.zeros_like(w)
        for ck in c:
            dq = dq * w + q
            q = q * w + ck
        # p'/p = n/z - w^2 r'(w) / r(w)
        zo = z[~inside]
        out[~inside] = 1.0 / (n / zo - w * w * dq / q)
    return out


def _backward_error(c: np.ndarray, z: np.ndarray) -> float:
    n = c.size - 1
    worst = 0.0
    for zi in z:
        if abs(zi) <= 1:
            num = abs(np.polynomial.polynomial.polyval(zi, c))
            den = np.polynomial.polynomial.polyval(abs(zi), np.abs(c))
        else:
            w = 1 / zi
            num = abs(np.polynomial.polynomial.polyval(w, c[::-1]))
            den = np.polynomial.polynomial.polyval(abs(w), np.abs(c[::-1]))
        worst = max(worst, num / den)
    return worst


def polynomial_roots(coeffs, maxiter: int = 200, residual_tol: float = 1e-9) -> np.ndarray:
    """All roots of ``sum_k coeffs[k] z^k`` (nonzero leading coefficient).

    Aberth-Ehrlich simultaneous iteration started on a rotated circle whose
    radius is the geometric mean of the root moduli; if the backward error of
    the result exceeds ``residual_tol`` the companion-matrix eigenvalues are
    used instead.
    """
    c = np.asarray(coeffs, dtype=complex)
    n = c.size - 1
    if n < 1:
        return np.zeros(0, dtype=complex)
    if c[-1] == 0:
        raise ValueError("leading coefficient is zero")
    if n == 1:
        return np.array([-c[0] / c[1]])
    radius = abs(c[0] / c[-1]) ** (1.0 / n) if c[0] != 0 else 1.0
    if not np.isfinite(radius) or radius == 0:
        radius = 1.0
    z = radius * np.exp(1j * (2.0 * math.pi * np.arange(n) / n + 0.4 / n + 0.25))
    with np.errstate(all="ignore"):
        z = _aberth(c, z, maxiter)
    if not np.all(np.isfinite(z)) or _backward_error(c, z) > residual_tol:
        z = np.roots(c[::-1])
    return z


def _aberth(c: np.ndarray, z: np.ndarray, maxiter: int) -> np.ndarray:
    for _ in range(maxiter):
        ratio = _newton_ratio(c, z)
        diff = z[:, None] - z[None, :]
        np.fill_diagonal(diff, 1.0)
        inv = 1.0 / diff
        np.fill_diagonal(inv, 0.0)
        w = ratio / (1.0 - ratio * inv.sum(axis=1))
        w[~np.isfinite(w)] = 0.0
        z = z - w
        if np.all(np.abs(w) <= 4e-16 * np.maximum(1.0, np.abs(z))):
            break
    return z


def _root_spinor(alpha) -> np.ndarray:
    if is_inf(alpha):
        return np.array([0.0, 1.0], dtype=complex)
    alpha = complex(alpha)
    if abs(alpha) <= 1:
        u = np.array([1.0, alpha], dtype=complex)
    else:
        u = np.array([1.0 / alpha, 1.0], dtype=complex)
    return u / np.linalg.norm(u)


def _spinor_value(u):
    if u[0] == 0:
        return INF
    return complex(u[1] / u[0])


@dataclass(frozen=True)
class Root:
    value: object  # complex or INF
    multiplicity: int

    def spinor(self) -> np.ndarray:
        return _root_spinor(self.value)

    def star(self) -> NodeState:
        """Bloch-sphere point with stereographic coordinate equal to the root."""
        return NodeState.from_beta(self.value)


@dataclass(frozen=True)
class RootMultiset:
    roots: tuple[Root, ...]

    @property
    def total(self) -> int:
        return sum(r.multiplicity for r in self.roots)

    @property
    def gamma(self) -> int:
        return max(r.multiplicity for r in self.roots)

    def expanded(self) -> list:
        out = []
        for r in self.roots:
            out.extend([r.value] * r.multiplicity)
        return out

    def spinors(self) -> np.ndarray:
        """Unit spinors of all roots, repeated by multiplicity (shape (N, 2))."""
        return np.array([_root_spinor(v) for v in self.expanded()]).reshape(-1, 2)

    def multiplicity_at_infinity(self) -> int:
        return sum(r.multiplicity for r in self.roots if is_inf(r.value))


def _chordal_matrix(us: np.ndarray) -> np.ndarray:
    det = us[:, None, 0] * us[None, :, 1] - us[:, None, 1] * us[None, :, 0]
    return 2.0 * np.abs(det)


def _cluster(values: list, tol: float) -> RootMultiset:
    if not values:
        return RootMultiset(())
    us = np.array([_root_spinor(v) for v in values])
    dist = _chordal_matrix(us)
    n = len(values)
    parent = list(range(n))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for i in range(n):
        for j in range(i + 1, n):
            if dist[i, j] <= tol:
                parent[find(i)] = find(j)
    groups: dict[int, list[int]] = {}
    for i in range(n):
        groups.setdefault(find(i), []).append(i)
    roots = []
    for members in sorted(groups.values(), key=lambda m: m[0]):
        vals = [values[i] for i in members]
        if any(is_inf(v) for v in vals):
            rep = INF
        elif any(v == 0 for v in vals):
            rep = 0j
        elif len(vals) == 1:
            rep = complex(vals[0])
        else:
            vec = np.mean([NodeState.from_beta(v).bloch_vector() for v in vals], axis=0)
            rep = _bloch_to_value(vec)
        roots.append(Root(rep, len(members)))
    return RootMultiset(tuple(roots))


def _bloch_to_value(vec: np.ndarray):
    x, y, z = vec / np.linalg.norm(vec)
    if z <= -1.0:
        return INF
    # beta = e^{i phi} tan(theta/2) = (x + i y) / (1 + z)
    return complex(x, y) / (1.0 + z)


def majorana_roots(p: MajoranaPoly, tol: float = DEFAULT_CLUSTER_TOL, *, merge: bool = True) -> RootMultiset:
    """Roots of the Majorana polynomial with multiplicities.

    Exactly vanishing low-order coefficients give roots at 0 and a degree
    deficit gives roots at infinity; the remaining roots are computed
    numerically and merged by single-linkage clustering in the chordal metric.
    With ``merge`` set, clusters further apart than ``tol`` are also merged
    when the polynomial has a numerically exact multiple root at their centre.
    ``tol = 0`` disables all merging.
    """
    lo, hi = p._support()
    n = p.n_qubits
    finite = polynomial_roots(p.coeffs[lo : hi + 1]) if hi > lo else np.zeros(0, complex)
    values = [0j] * lo + [complex(z) for z in finite] + [INF] * (n - hi)
    roots = _cluster(values, tol)
    if merge and tol > 0:
        roots = _merge_multiple(roots, p.coeffs)
    return roots


def _transform_coeffs(lam: np.ndarray, minv: np.ndarray) -> np.ndarray:
    """Coefficients of ``P(M^{-1} v)`` for the binary form ``P(r) = sum lam_k r0^(N-k) r1^k``."""
    n = lam.size - 1
    (a, b), (c, d) = minv
    lin0 = np.array([a, b], dtype=complex)
    lin1 = np.array([c, d], dtype=complex)
    pow0 = [np.ones(1, dtype=complex)]
    pow1 = [np.ones(1, dtype=complex)]
    for _ in range(n):
        pow0.append(np.convolve(pow0[-1], lin0))
        pow1.append(np.convolve(pow1[-1], lin1))
    out = np.zeros(n + 1, dtype=complex)
    for k, lk in enumerate(lam):
        if lk != 0:
            out += lk * np.convolve(pow0[n - k], pow1[k])
    return out


def _to_north(u: np.ndarray) -> np.ndarray:
    """``M^{-1}`` for the unitary ``M`` sending the unit spinor ``u`` to ``(1, 0)``."""
    return np.array([[u[0], -np.conj(u[1])], [u[1], np.conj(u[0])]])


def _multiple_root_error(lam: np.ndarray, u: np.ndarray, m: int, polish: bool):
    """Relative backward error of an ``m``-fold root at spinor ``u``, optionally polished first.

    In the frame where ``u`` is ``alpha = 0`` the first ``m`` Dicke amplitudes
    must vanish; the error is their largest modulus relative to the state norm.
    """
    d = dicke_weights(lam.size - 1)

    def error(u):
        lt = _transform_coeffs(lam, _to_north(u))
        return float(np.abs(lt[:m] / d[:m]).max() / np.linalg.norm(lt / d)), lt

    err, lt = error(u)
    for _ in range(8 if polish and m < lam.size else 0):
        if lt[m] == 0:
            break
        # root of the (m-1)-th derivative nearest alpha = 0
        step = -lt[m - 1] / (m * lt[m])
        v = _to_north(u) @ np.array([1.0, step])
        trial = v / np.linalg.norm(v)
        trial_err, trial_lt = error(trial)
        if not trial_err < err:
            break
        u, err, lt = trial, trial_err, trial_lt
    return err, u


def _merge_multiple(roots: RootMultiset, lam: np.ndarray) -> RootMultiset:
    """Merge nearby root clusters whenever the merged multiple root is consistent.

    Rounding splits an ``m``-fold root into ``m`` roots about ``eps^(1/m)``
    apart, beyond any fixed tolerance for large ``m``.  Every group of the
    single-linkage dendrogram below ``_MERGE_MAX_DIST`` is tested as one root
    of the combined multiplicity at its polished centre; the largest groups
    passing the backward-error test are merged.
    """
    items = [(r.multiplicity, r.spinor(), r.value) for r in roots.roots]
    if len(items) < 2:
        return roots
    dist = _chordal_matrix(np.array([it[1] for it in items]))
    np.fill_diagonal(dist, 0.0)
    tree = linkage(squareform(dist, checks=False), "single")
    members = {i: [i] for i in range(len(items))}
    accepted: dict[int, tuple] = {}
    for k, (a, b, height, _) in enumerate(tree):
        node = len(items) + k
        members[node] = members[int(a)] + members[int(b)]
        if height > _MERGE_MAX_DIST:
            continue
        group = [items[i] for i in members[node]]
        m = sum(it[0] for it in group)
        exact = [v for _, _, v in group if is_inf(v) or v == 0]
        if exact:
            u0 = _root_spinor(exact[0])
        else:
            bloch = sum(mi * NodeState.from_beta(v).bloch_vector() for mi, _, v in group)
            u0 = _root_spinor(_bloch_to_value(bloch))
        err, u = _multiple_root_error(lam, u0, m, polish=not exact)
        if err <= _MERGE_BACKWARD:
            accepted[node] = (exact[0] if exact else _spinor_value(u), m)
    merged = []
    taken: set[int] = set()
    for node in sorted(accepted, reverse=True):
        if taken.isdisjoint(members[node]):
            taken.update(members[node])
            merged.append(Root(*accepted[node]))
    rest = [Root(v, m) for i, (m, _, v) in enumerate(items) if i not in taken]
    return RootMultiset(tuple(rest + merged))


@dataclass(frozen=True)
class GenericityReport:
    gamma: int
    generic: bool
    parity: str


def generic_bound(n: int) -> int:
    """Largest admissible degeneracy short of the separable case ``gamma = N``."""
    return (n - 1) // 2 if n % 2 else n // 2


def is_generic_gamma(n: int, gamma: int) -> bool:
    return gamma == n or gamma <= generic_bound(n)


def genericity(s: SymmetricState, tol: float = DEFAULT_CLUSTER_TOL) -> GenericityReport:
    """Highest root multiplicity (infinity included) and the parity rule verdict."""
    n = s.n_qubits
    gamma = majorana_roots(majorana_polynomial(s), tol).gamma
    return GenericityReport(gamma, is_generic_gamma(n, gamma), "odd" if n % 2 else "even")


def _poly_from_spinors(chis: np.ndarray) -> np.ndarray:
    """Ascending coefficients of ``prod_n (chi_n0 + alpha chi_n1)``."""
    out = np.ones(1, dtype=complex)
    for chi in chis:
        out = np.convolve(out, [chi[0], chi[1]])
    return out


def product_form(s: SymmetricState) -> tuple[complex, list[np.ndarray]]:
    """``A`` and single-qubit states ``chi_n`` with ``s = A sum_perm chi_1 ... chi_N``.

    ``chi_n = sin(t/2)|0> - exp(-i p) cos(t/2)|1>`` where ``(t, p)`` are the
    Bloch angles of the n-th Majorana root; roots at infinity give ``|0>``.
    """
    n = s.n_qubits
    if s.norm() == 0:
        raise ValueError("zero state has no product form")
    roots = majorana_roots(majorana_polynomial(s))
    chis = []
    for v in roots.expanded():
        star = NodeState.from_beta(v)
        h = star.theta / 2
        chis.append(np.array([math.sin(h), -np.exp(-1j * star.phi) * math.cos(h)]))
    sym = math.factorial(n) * _poly_from_spinors(chis) / dicke_weights(n)
    amp = complex(np.vdot(sym, s.dicke) / np.vdot(sym, sym))
    return amp, chis


def symmetrized_product(chis: list[np.ndarray]) -> SymmetricState:
    """Dicke amplitudes of ``sum_perm chi_1 (x) ... (x) chi_N``."""
    n = len(chis)
    return SymmetricState(math.factorial(n) * _poly_from_spinors(chis) / dicke_weights(n))


def mobius_spinor_matrix(g: CollectiveMap) -> np.ndarray:
    """Matrix acting on root spinors when ``G`` acts on the qubits.

    A root ``alpha`` of ``Psi`` goes to ``(a alpha - b) / (f - d alpha)``.
    """
    a, b, d, f = g.a, g.b, g.d, g.f
    return np.array([[f, -d], [-b, a]])


def mobius_on_roots(g: CollectiveMap, r: RootMultiset) -> RootMultiset:
    m = mobius_spinor_matrix(g)
    out = []
    for root in r.roots:
        v = m @ root.spinor()
        out.append(Root(_spinor_value(v / np.linalg.norm(v)), root.multiplicity))
    return RootMultiset(tuple(out))


def multiset_distance(r1: RootMultiset, r2: RootMultiset) -> float:
    """Largest chordal distance under the best one-to-one matching of roots."""
    u1, u2 = r1.spinors(), r2.spinors()
    if len(u1) != len(u2):
        return math.inf
    if len(u1) == 0:
        return 0.0
    cost = 2.0 * np.abs(u1[:, None, 0] * u2[None, :, 1] - u1[:, None, 1] * u2[None, :, 0])
    i, j = linear_sum_assignment(cost)
    return float(cost[i, j].max())
