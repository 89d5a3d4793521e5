"""Exact finite-dimensional quantum mechanics used as the verification oracle.

Pure states, density matrices, POVMs, projective bases, Bloch vectors, and
the closed-form quantities (Born probabilities, two-qubit singlet
correlations, Bloch parametrization) that every hidden-variable model in this
package is audited against.  Dimensions stay small (tests need d <= 8), so
everything is dense complex arithmetic.

All values are validated at construction and treated as immutable afterwards;
equality of states is only ever judged through |<a|b>|^2, never through a
canonical global phase.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .constants import TOL

__all__ = [
    "BlochVector",
    "StateVector",
    "DensityMatrix",
    "Povm",
    "ProjectiveBasis",
    "born_probability",
    "born_distribution",
    "ket_from_bloch",
    "bloch_from_ket",
    "spin_eigenket",
    "singlet_state",
    "singlet_outcome_probability",
    "singlet_expectation",
    "orthonormal_basis_containing",
    "random_state",
    "random_basis",
    "random_povm",
    "random_bloch",
]


@dataclass(frozen=True)
class BlochVector:
    """Unit 3-vector: a qubit ray or a spin measurement axis."""

    x: float
    y: float
    z: float

    def __post_init__(self):
        norm = np.sqrt(self.x * self.x + self.y * self.y + self.z * self.z)
        if abs(norm - 1.0) > TOL.structural:
            raise ValueError(f"Bloch vector must have unit norm, got {norm!r}")

    @classmethod
    def normalized(cls, x: float, y: float, z: float) -> "BlochVector":
        norm = np.sqrt(x * x + y * y + z * z)
        if norm <= 0.0:
            raise ValueError("cannot normalize the zero vector")
        return cls(x / norm, y / norm, z / norm)

    @classmethod
    def from_array(cls, arr) -> "BlochVector":
        a = np.asarray(arr, dtype=float).reshape(3)
        return cls(float(a[0]), float(a[1]), float(a[2]))

    @classmethod
    def from_polar(cls, theta: float, phi: float) -> "BlochVector":
        """Polar angle from +z and azimuth, both in radians."""
        st = np.sin(theta)
        return cls.normalized(st * np.cos(phi), st * np.sin(phi), np.cos(theta))

    def as_array(self) -> np.ndarray:
        return np.array([self.x, self.y, self.z], dtype=float)

    def dot(self, other: "BlochVector") -> float:
        return self.x * other.x + self.y * other.y + self.z * other.z

    def __neg__(self) -> "BlochVector":
        return BlochVector(-self.x, -self.y, -self.z)


class StateVector:
    """Normalized pure state |psi> in dimension d >= 2."""

    __slots__ = ("dim", "amplitudes")

    def __init__(self, amplitudes):
        amp = np.array(amplitudes, dtype=complex).reshape(-1)
        if amp.size < 2:
            raise ValueError("state dimension must be at least 2")
        norm = np.linalg.norm(amp)
        if abs(norm - 1.0) > TOL.structural:
            raise ValueError(f"state vector must be normalized, got norm {norm!r}")
        amp.setflags(write=False)
        self.amplitudes = amp
        self.dim = amp.size

    def inner(self, other: "StateVector") -> complex:
        """<self|other>."""
        return complex(np.vdot(self.amplitudes, other.amplitudes))

    def overlap_sq(self, other: "StateVector") -> float:
        """|<self|other>|^2, computed as re^2 + im^2 (symmetric in its arguments)."""
        z = np.vdot(self.amplitudes, other.amplitudes)
        return float(z.real * z.real + z.imag * z.imag)

    def projector(self) -> np.ndarray:
        return np.outer(self.amplitudes, np.conj(self.amplitudes))

    def to_density(self) -> "DensityMatrix":
        return DensityMatrix(self.projector())

    def tensor(self, other: "StateVector") -> "StateVector":
        return StateVector(np.kron(self.amplitudes, other.amplitudes))

    def __repr__(self):
        return f"StateVector(dim={self.dim})"


class DensityMatrix:
    """Hermitian, PSD, unit-trace operator describing a (possibly mixed) preparation."""

    __slots__ = ("dim", "entries")

    def __init__(self, entries):
        m = np.array(entries, dtype=complex)
        if m.ndim != 2 or m.shape[0] != m.shape[1] or m.shape[0] < 2:
            raise ValueError("density matrix must be square with dimension >= 2")
        if np.max(np.abs(m - m.conj().T)) > TOL.structural:
            raise ValueError("density matrix must be Hermitian")
        eigs = np.linalg.eigvalsh(m)
        if eigs.min() < -TOL.structural:
            raise ValueError(f"density matrix must be PSD, min eigenvalue {eigs.min()!r}")
        tr = np.trace(m).real
        if abs(tr - 1.0) > TOL.structural:
            raise ValueError(f"density matrix must have unit trace, got {tr!r}")
        m.setflags(write=False)
        self.entries = m
        self.dim = m.shape[0]

    @classmethod
    def from_state(cls, psi: StateVector) -> "DensityMatrix":
        return cls(psi.projector())

    @classmethod
    def mixture(cls, pairs: Iterable[tuple[float, StateVector]]) -> "DensityMatrix":
        """Convex combination sum_i w_i |a_i><a_i| of pure components."""
        pairs = list(pairs)
        if not pairs:
            raise ValueError("mixture needs at least one component")
        weights = np.array([w for w, _ in pairs], dtype=float)
        if weights.min() < -TOL.structural:
            raise ValueError("mixture weights must be nonnegative")
        if abs(weights.sum() - 1.0) > TOL.structural:
            raise ValueError("mixture weights must sum to 1")
        dim = pairs[0][1].dim
        if any(s.dim != dim for _, s in pairs):
            raise ValueError("mixture components must share one dimension")
        acc = np.zeros((dim, dim), dtype=complex)
        for w, s in pairs:
            acc += w * s.projector()
        return cls(acc)

    def __repr__(self):
        return f"DensityMatrix(dim={self.dim})"


class Povm:
    """Ordered collection of labeled positive operators summing to the identity."""

    __slots__ = ("dim", "labels", "operators", "_index")

    def __init__(self, elements: Sequence[tuple[str, np.ndarray]]):
        if len(elements) < 1:
            raise ValueError("POVM needs at least one element")
        labels = tuple(str(label) for label, _ in elements)
        if len(set(labels)) != len(labels):
            raise ValueError("POVM labels must be unique")
        ops = []
        dim = None
        for label, op in elements:
            m = np.array(op, dtype=complex)
            if m.ndim != 2 or m.shape[0] != m.shape[1]:
                raise ValueError(f"element {label!r} is not a square matrix")
            if dim is None:
                dim = m.shape[0]
            elif m.shape[0] != dim:
                raise ValueError("POVM elements must share one dimension")
            if np.max(np.abs(m - m.conj().T)) > TOL.structural:
                raise ValueError(f"element {label!r} is not Hermitian")
            if np.linalg.eigvalsh(m).min() < -TOL.structural:
                raise ValueError(f"element {label!r} is not PSD")
            m.setflags(write=False)
            ops.append(m)
        total = sum(ops)
        if np.max(np.abs(total - np.eye(dim))) > TOL.structural:
            raise ValueError("POVM elements must sum to the identity")
        self.dim = dim
        self.labels = labels
        self.operators = tuple(ops)
        self._index = {label: k for k, label in enumerate(labels)}

    def __len__(self):
        return len(self.labels)

    def index(self, label: str) -> int:
        try:
            return self._index[label]
        except KeyError:
            raise KeyError(f"unknown outcome label {label!r}; have {self.labels}") from None

    def operator(self, label: str) -> np.ndarray:
        return self.operators[self.index(label)]

    def items(self):
        return zip(self.labels, self.operators)

    def __repr__(self):
        return f"{type(self).__name__}(dim={self.dim}, labels={self.labels})"


class ProjectiveBasis(Povm):
    """POVM whose elements are rank-1 orthonormal projectors |e_i><e_i|.

    Keeps the defining kets so callers can work with amplitudes directly.
    """

    __slots__ = ("kets",)

    def __init__(self, kets: Sequence[StateVector], labels: Sequence[str] | None = None):
        kets = tuple(kets)
        if labels is None:
            labels = tuple(str(k) for k in range(len(kets)))
        super().__init__([(label, ket.projector()) for label, ket in zip(labels, kets)])
        if len(kets) != self.dim:
            raise ValueError("projective basis must have exactly dim rank-1 elements")
        for k, p in enumerate(self.operators):
            if np.max(np.abs(p @ p - p)) > TOL.structural:
                raise ValueError(f"element {self.labels[k]!r} is not idempotent")
        for a in range(len(kets)):
            for b in range(a + 1, len(kets)):
                if np.max(np.abs(self.operators[a] @ self.operators[b])) > TOL.structural:
                    raise ValueError("projectors must be pairwise orthogonal")
        self.kets = kets


def born_probability(prep: DensityMatrix | StateVector, M: Povm, label: str) -> float:
    """tr(prep E_label), clamped to [0, 1].

    Raises KeyError for an unknown label and ValueError on dimension mismatch.
    """
    if prep.dim != M.dim:
        raise ValueError(f"preparation dim {prep.dim} != measurement dim {M.dim}")
    op = M.operator(label)
    if isinstance(prep, StateVector):
        p = np.vdot(prep.amplitudes, op @ prep.amplitudes).real
    else:
        p = np.trace(prep.entries @ op).real
    return float(min(1.0, max(0.0, p)))


def born_distribution(prep: DensityMatrix | StateVector, M: Povm) -> dict[str, float]:
    return {label: born_probability(prep, M, label) for label in M.labels}


def ket_from_bloch(v: BlochVector) -> StateVector:
    """|theta, phi> = cos(theta/2)|0> + e^{i phi} sin(theta/2)|1>."""
    theta = np.arccos(np.clip(v.z, -1.0, 1.0))
    phi = np.arctan2(v.y, v.x)
    return StateVector([np.cos(theta / 2), np.exp(1j * phi) * np.sin(theta / 2)])


def bloch_from_ket(s: StateVector) -> BlochVector:
    """Inverse Bloch parametrization; defined for qubits only."""
    if s.dim != 2:
        raise ValueError("Bloch coordinates are defined for dim == 2 only")
    a, b = s.amplitudes
    cross = np.conj(a) * b
    return BlochVector.normalized(2.0 * cross.real, 2.0 * cross.imag, abs(a) ** 2 - abs(b) ** 2)


def spin_eigenket(axis: BlochVector, outcome: int) -> StateVector:
    """Eigenstate of sigma.axis with eigenvalue outcome in {+1, -1}."""
    if outcome not in (+1, -1):
        raise ValueError("outcome must be +1 or -1")
    return ket_from_bloch(axis if outcome == +1 else -axis)


def singlet_state() -> StateVector:
    """(|01> - |10>)/sqrt(2)."""
    return StateVector(np.array([0.0, 1.0, -1.0, 0.0]) / np.sqrt(2.0))


def singlet_outcome_probability(a: BlochVector, b: BlochVector, i: int, j: int) -> float:
    """Probability of joint outcome (i, j) for spin measurements along a and b."""
    if i not in (+1, -1) or j not in (+1, -1):
        raise ValueError("outcomes must be +1 or -1")
    return float(min(1.0, max(0.0, (1.0 - i * j * a.dot(b)) / 4.0)))


def singlet_expectation(a: BlochVector, b: BlochVector) -> float:
    """<sigma.a (x) sigma.b> for the singlet: -a.b."""
    return -a.dot(b)


def orthonormal_basis_containing(
    phi: StateVector, labels: Sequence[str] | None = None
) -> ProjectiveBasis:
    """Deterministic orthonormal basis whose first ket is exactly `phi`.

    The completion Gram-Schmidts the canonical basis against phi (two passes
    for numerical hygiene); phi's amplitudes are stored untouched so that
    overlaps against element 0 reproduce |<phi|.>|^2 bit for bit.
    """
    d = phi.dim
    collected = [np.array(phi.amplitudes, dtype=complex)]
    for k in range(d):
        if len(collected) == d:
            break
        cand = np.zeros(d, dtype=complex)
        cand[k] = 1.0
        for _ in range(2):
            for u in collected:
                cand = cand - np.vdot(u, cand) * u
        norm = np.linalg.norm(cand)
        if norm > 1e-6:
            collected.append(cand / norm)
    if len(collected) < d:
        raise RuntimeError("orthonormal completion failed")  # unreachable for unit phi
    return ProjectiveBasis([StateVector(v) for v in collected], labels)


def random_state(dim: int, rng: np.random.Generator) -> StateVector:
    """Haar-random pure state."""
    v = rng.normal(size=dim) + 1j * rng.normal(size=dim)
    return StateVector(v / np.linalg.norm(v))


def random_basis(dim: int, rng: np.random.Generator) -> ProjectiveBasis:
    """Haar-random orthonormal measurement basis."""
    g = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    q, _ = np.linalg.qr(g)
    return ProjectiveBasis([StateVector(q[:, k]) for k in range(dim)])


def random_povm(dim: int, n_elements: int, rng: np.random.Generator) -> Povm:
    """Random informationally-unstructured POVM with n_elements outcomes."""
    if n_elements < 2:
        raise ValueError("POVM needs at least 2 elements")
    raw = []
    for _ in range(n_elements):
        g = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
        raw.append(g @ g.conj().T)
    total = sum(raw)
    eigs, vecs = np.linalg.eigh(total)
    inv_sqrt = vecs @ np.diag(1.0 / np.sqrt(eigs)) @ vecs.conj().T
    return Povm([(f"E{k}", inv_sqrt @ raw[k] @ inv_sqrt) for k in range(n_elements)])


def random_bloch(rng: np.random.Generator) -> BlochVector:
    """Uniform point on the unit sphere."""
    z = rng.uniform(-1.0, 1.0)
    phi = rng.uniform(0.0, 2.0 * np.pi)
    r = np.sqrt(max(0.0, 1.0 - z * z))
    return BlochVector.normalized(r * np.cos(phi), r * np.sin(phi), z)
