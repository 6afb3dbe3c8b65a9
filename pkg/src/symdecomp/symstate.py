"""Dicke-basis symmetric states, spin coherent states and collective maps.

Amplitudes are stored by the number of excitations ``k = m + N/2`` so the
half-integer spin projection never appears in array indices.  A state with
Dicke amplitudes ``c_k`` corresponds to the homogeneous binary form

    F(x, y) = sum_k d_k c_k x^(N-k) y^k,      d_k = sqrt(binom(N, k)),

under which the product state ``(u0|0> + u1|1>)^N`` maps to
``(u0 x + u1 y)^N``.  A collective map ``G`` therefore acts by the linear
substitution ``F(x, y) -> F(a x + d y, b x + f y)``, which is what
:func:`apply_collective` evaluates.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

TWO_PI = 2.0 * math.pi


class _Infinity:
    """The point at infinity of the extended complex plane."""

    __slots__ = ()

    def __repr__(self) -> str:
        return "INF"

    def __reduce__(self):
        return "INF"


INF = _Infinity()


def is_inf(z) -> bool:
    return z is INF


@lru_cache(maxsize=None)
def _binomials(n: int) -> np.ndarray:
    return np.array([math.comb(n, k) for k in range(n + 1)], dtype=float)


def dicke_weights(n: int) -> np.ndarray:
    """Return ``d_{N,k} = sqrt(binom(N, k))`` for ``k = 0..N``."""
    if not isinstance(n, (int, np.integer)) or n < 1:
        raise ValueError(f"number of qubits must be a positive integer, got {n!r}")
    w = np.sqrt(_binomials(int(n)))
    w.setflags(write=False)
    return w


def _readonly(a: np.ndarray) -> np.ndarray:
    a = np.array(a, dtype=complex, copy=True)
    a.setflags(write=False)
    return a


@dataclass(frozen=True)
class SymmetricState:
    """Permutation-symmetric N-qubit state given by its Dicke amplitudes."""

    dicke: np.ndarray

    def __post_init__(self):
        c = np.asarray(self.dicke)
        if c.ndim != 1 or c.size < 2:
            raise ValueError("need at least two Dicke amplitudes (N >= 1)")
        if not np.all(np.isfinite(c)):
            raise ValueError("Dicke amplitudes must be finite")
        object.__setattr__(self, "dicke", _readonly(c))

    @property
    def n_qubits(self) -> int:
        return self.dicke.size - 1

    def norm(self) -> float:
        return float(np.linalg.norm(self.dicke))

    def scaled(self, factor: complex) -> "SymmetricState":
        return SymmetricState(self.dicke * factor)

    def unit(self) -> "SymmetricState":
        """Rescale to unit norm, keeping the global phase."""
        n = self.norm()
        if n == 0.0:
            raise ValueError("cannot normalize the zero vector")
        return SymmetricState(self.dicke / n)

    def normalize(self) -> "SymmetricState":
        """Unit norm with the first non-negligible amplitude real positive."""
        s = self.unit()
        c = s.dicke
        big = np.abs(c) > 1e-12 * np.abs(c).max()
        lead = c[np.argmax(big)]
        return SymmetricState(c * (abs(lead) / lead))

    def __len__(self) -> int:
        return self.dicke.size

    def __repr__(self) -> str:
        return f"SymmetricState(N={self.n_qubits}, dicke={np.array2string(self.dicke, precision=6)})"


def dicke_state(n: int, k: int) -> SymmetricState:
    """The Dicke state with ``k`` excitations, ``|N/2, k - N/2>``."""
    if not 0 <= k <= n:
        raise ValueError(f"excitation number {k} outside 0..{n}")
    c = np.zeros(n + 1, dtype=complex)
    c[k] = 1.0
    return SymmetricState(c)


def ghz_state(n: int) -> SymmetricState:
    c = np.zeros(n + 1, dtype=complex)
    c[0] = c[-1] = 1 / math.sqrt(2)
    return SymmetricState(c)


def w_state(n: int) -> SymmetricState:
    return dicke_state(n, 1)


@dataclass(frozen=True)
class NodeState:
    """Single-qubit state ``cos(theta/2)|0> + exp(i phi) sin(theta/2)|1>``.

    ``theta == pi`` is the explicit south pole ``|1>`` (stereographic
    coordinate at infinity); the azimuth of either pole is stored as 0.
    """

    theta: float
    phi: float = 0.0

    def __post_init__(self):
        theta, phi = float(self.theta), float(self.phi)
        if not (0.0 <= theta <= math.pi) or not math.isfinite(phi):
            raise ValueError(f"invalid Bloch angles theta={theta}, phi={phi}")
        phi = phi % TWO_PI
        if phi >= TWO_PI:
            phi = 0.0
        if theta == 0.0 or theta == math.pi:
            phi = 0.0
        object.__setattr__(self, "theta", theta)
        object.__setattr__(self, "phi", phi)

    @classmethod
    def north(cls) -> "NodeState":
        return cls(0.0)

    @classmethod
    def south(cls) -> "NodeState":
        return cls(math.pi)

    @classmethod
    def from_spinor(cls, u) -> "NodeState":
        """Node of a nonzero spinor; the overall phase and norm are dropped."""
        u0, u1 = complex(u[0]), complex(u[1])
        a0, a1 = abs(u0), abs(u1)
        if a0 == 0.0 and a1 == 0.0:
            raise ValueError("zero spinor has no node")
        if a0 == 0.0:
            return cls.south()
        if a1 == 0.0:
            return cls.north()
        return cls(2.0 * math.atan2(a1, a0), math.atan2(u1.imag, u1.real) - math.atan2(u0.imag, u0.real))

    @classmethod
    def from_beta(cls, beta) -> "NodeState":
        """Node with stereographic coordinate ``beta = exp(i phi) tan(theta/2)``."""
        if beta is INF:
            return cls.south()
        beta = complex(beta)
        return cls(2.0 * math.atan(abs(beta)), math.atan2(beta.imag, beta.real))

    @property
    def is_south(self) -> bool:
        return self.theta == math.pi

    @property
    def beta(self):
        if self.is_south:
            return INF
        return complex(math.tan(self.theta / 2) * np.exp(1j * self.phi))

    def spinor(self) -> np.ndarray:
        if self.is_south:
            return np.array([0.0, 1.0], dtype=complex)
        if self.theta == 0.0:
            return np.array([1.0, 0.0], dtype=complex)
        h = self.theta / 2
        return np.array([math.cos(h), np.exp(1j * self.phi) * math.sin(h)], dtype=complex)

    def antipode(self) -> "NodeState":
        if self.theta == 0.0:
            return NodeState.south()
        if self.is_south:
            return NodeState.north()
        return NodeState(math.pi - self.theta, self.phi + math.pi)

    def bloch_vector(self) -> np.ndarray:
        st = math.sin(self.theta)
        return np.array([st * math.cos(self.phi), st * math.sin(self.phi), math.cos(self.theta)])


def spinor_phase_split(v) -> tuple[NodeState, complex]:
    """Write ``v = scale * node.spinor()`` and return ``(node, scale)``."""
    node = NodeState.from_spinor(v)
    u = node.spinor()
    i = 0 if abs(u[0]) >= abs(u[1]) else 1
    return node, complex(v[i] / u[i])


def single_qubit_overlap(n1: NodeState, n2: NodeState) -> complex:
    return complex(np.vdot(n1.spinor(), n2.spinor()))


def chordal_distance(u, v) -> float:
    """Distance between the Bloch-sphere points of two spinors (sphere radius 1)."""
    u = np.asarray(u, dtype=complex)
    v = np.asarray(v, dtype=complex)
    nu, nv = np.linalg.norm(u), np.linalg.norm(v)
    return float(2.0 * abs(u[0] * v[1] - u[1] * v[0]) / (nu * nv))


def coherent_amplitudes(n: int, spinor) -> np.ndarray:
    """Dicke amplitudes of ``spinor^{(x)N}``, without normalizing the spinor."""
    u0, u1 = complex(spinor[0]), complex(spinor[1])
    k = np.arange(n + 1)
    return dicke_weights(n) * np.power(u0, n - k) * np.power(u1, k)


def coherent_state(n: int, node: NodeState) -> SymmetricState:
    """The spin coherent state ``|phi>^{(x)N}`` in the Dicke basis."""
    if n < 1:
        raise ValueError("need at least one qubit")
    return SymmetricState(coherent_amplitudes(n, node.spinor()))


def overlap(s1: SymmetricState, s2: SymmetricState) -> complex:
    """Inner product ``<s1|s2>``."""
    if s1.n_qubits != s2.n_qubits:
        raise ValueError(f"qubit numbers differ: {s1.n_qubits} vs {s2.n_qubits}")
    return complex(np.vdot(s1.dicke, s2.dicke))


def fidelity(s1: SymmetricState, s2: SymmetricState) -> float:
    """``|<s1|s2>|^2`` of the normalized states."""
    return abs(overlap(s1.unit(), s2.unit())) ** 2


UNITARY = "unitary"
UNIT_DETERMINANT = "unit-determinant"
GENERAL = "general-invertible"
_KINDS = (UNITARY, UNIT_DETERMINANT, GENERAL)


@dataclass(frozen=True)
class CollectiveMap:
    """A 2x2 matrix ``[[a, b], [d, f]]`` applied identically to every qubit."""

    matrix: np.ndarray
    kind: str = GENERAL
    _checked: bool = field(default=True, repr=False, compare=False)

    def __post_init__(self):
        m = np.array(self.matrix, dtype=complex)
        if m.shape != (2, 2) or not np.all(np.isfinite(m)):
            raise ValueError("collective map must be a finite 2x2 matrix")
        if self.kind not in _KINDS:
            raise ValueError(f"unknown map kind {self.kind!r}")
        det = m[0, 0] * m[1, 1] - m[0, 1] * m[1, 0]
        if det == 0:
            raise ValueError("collective map is singular")
        if self.kind == UNIT_DETERMINANT and abs(det - 1) >= 1e-12:
            raise ValueError(f"determinant {det} is not 1")
        if self.kind == UNITARY and np.abs(m.conj().T @ m - np.eye(2)).max() >= 1e-12:
            raise ValueError("matrix is not unitary")
        m.setflags(write=False)
        object.__setattr__(self, "matrix", m)

    @classmethod
    def identity(cls) -> "CollectiveMap":
        return cls(np.eye(2), UNITARY)

    @property
    def a(self) -> complex:
        return complex(self.matrix[0, 0])

    @property
    def b(self) -> complex:
        return complex(self.matrix[0, 1])

    @property
    def d(self) -> complex:
        return complex(self.matrix[1, 0])

    @property
    def f(self) -> complex:
        return complex(self.matrix[1, 1])

    @property
    def det(self) -> complex:
        return self.a * self.f - self.b * self.d

    def compose(self, first: "CollectiveMap") -> "CollectiveMap":
        """The map ``self . first`` (apply ``first``, then ``self``)."""
        kinds = {self.kind, first.kind}
        kind = UNITARY if kinds == {UNITARY} else (
            UNIT_DETERMINANT if kinds <= {UNITARY, UNIT_DETERMINANT} else GENERAL
        )
        return _coerce_map(self.matrix @ first.matrix, kind)

    def inverse(self) -> "CollectiveMap":
        a, b, d, f = self.a, self.b, self.d, self.f
        inv = np.array([[f, -b], [-d, a]]) / self.det
        return _coerce_map(inv, self.kind)

    def apply_to_spinor(self, u) -> np.ndarray:
        return self.matrix @ np.asarray(u, dtype=complex)

    def apply_to_node(self, node: NodeState) -> tuple[NodeState, complex]:
        """Image node and the scale with ``G u = scale * image.spinor()``."""
        return spinor_phase_split(self.apply_to_spinor(node.spinor()))


def _coerce_map(m: np.ndarray, kind: str) -> CollectiveMap:
    # products and inverses drift by a few ulps; re-project onto the group
    if kind == UNITARY:
        u, _, vh = np.linalg.svd(m)
        m = u @ vh
        m = m / np.sqrt(np.linalg.det(m))
    elif kind == UNIT_DETERMINANT:
        m = m / np.sqrt(np.linalg.det(m))
    return CollectiveMap(m, kind)


def unitary_map(m) -> CollectiveMap:
    """Wrap a 2x2 unitary, rescaling its determinant to 1."""
    return _coerce_map(np.asarray(m, dtype=complex), UNITARY)


def sl2_map(m) -> CollectiveMap:
    """Wrap an invertible 2x2 matrix rescaled to unit determinant."""
    m = np.asarray(m, dtype=complex)
    det = m[0, 0] * m[1, 1] - m[0, 1] * m[1, 0]
    if det == 0:
        raise ValueError("collective map is singular")
    return _coerce_map(m, UNIT_DETERMINANT)


def rotation_to_south(node: NodeState) -> CollectiveMap:
    """SU(2) element sending ``node`` exactly to ``|1>``."""
    u0, u1 = node.spinor()
    m = np.array([[u1, -u0], [np.conj(u0), np.conj(u1)]])
    return CollectiveMap(m, UNITARY)


def _substitute(lam: np.ndarray, m: np.ndarray) -> np.ndarray:
    """Coefficients of ``F(a x + d y, b x + f y)`` from those of ``F``."""
    n = lam.size - 1
    (a, b), (d, f) = m
    p = [np.ones(1, dtype=complex)]
    q = [np.ones(1, dtype=complex)]
    for _ in range(n):
        p.append(np.convolve(p[-1], [a, d]))
        q.append(np.convolve(q[-1], [b, f]))
    out = np.zeros(n + 1, dtype=complex)
    for j in range(n + 1):
        if lam[j] != 0:
            out += lam[j] * np.convolve(p[n - j], q[j])
    return out


def apply_collective(g: CollectiveMap, s: SymmetricState) -> SymmetricState:
    """Dicke amplitudes of ``G^{(x)N} |s>`` (no renormalization)."""
    w = dicke_weights(s.n_qubits)
    lam = _substitute(w * s.dicke, g.matrix)
    return SymmetricState(lam / w)


def apply_collective_normalized(g: CollectiveMap, s: SymmetricState) -> tuple[SymmetricState, float]:
    """Unit-norm image of ``s`` and the norm that was divided out."""
    out = apply_collective(g, s)
    scale = out.norm()
    return SymmetricState(out.dicke / scale), scale


def random_state(n: int, rng: np.random.Generator) -> SymmetricState:
    """Unit state with i.i.d. complex-normal Dicke amplitudes."""
    c = rng.normal(size=n + 1) + 1j * rng.normal(size=n + 1)
    return SymmetricState(c / np.linalg.norm(c))


def random_unitary(rng: np.random.Generator) -> CollectiveMap:
    """Haar-random element of SU(2)."""
    z = rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2))
    q, r = np.linalg.qr(z)
    q = q * (np.diag(r) / np.abs(np.diag(r)))
    return unitary_map(q)


def random_sl2(rng: np.random.Generator, bound: float = 2.0) -> CollectiveMap:
    """Random unit-determinant map with all entries of modulus at most ``bound``."""
    while True:
        m = rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2))
        det = m[0, 0] * m[1, 1] - m[0, 1] * m[1, 0]
        if abs(det) < 1e-3:
            continue
        m = m / np.sqrt(det)
        if np.abs(m).max() <= bound:
            return sl2_map(m)
