"""Independent oracles used to freeze expected values.

Everything here is plain complex matrix arithmetic or midpoint sphere
quadrature written against numpy only, deliberately not reusing the library's
own code paths.
"""

from __future__ import annotations

import numpy as np

SX = np.array([[0, 1], [1, 0]], dtype=complex)
SY = np.array([[0, -1j], [1j, 0]], dtype=complex)
SZ = np.array([[1, 0], [0, -1]], dtype=complex)
ID2 = np.eye(2, dtype=complex)

SINGLET = np.array([0.0, 1.0, -1.0, 0.0], dtype=complex) / np.sqrt(2.0)


def spin_projector(axis: np.ndarray, sign: int) -> np.ndarray:
    """(I + sign * axis.sigma)/2."""
    return 0.5 * (ID2 + sign * (axis[0] * SX + axis[1] * SY + axis[2] * SZ))


def singlet_prob(a: np.ndarray, b: np.ndarray, i: int, j: int) -> float:
    """Joint outcome probability from the explicit 4-dim projector."""
    op = np.kron(spin_projector(a, i), spin_projector(b, j))
    return float(np.vdot(SINGLET, op @ SINGLET).real)


def singlet_expectation_sum(a: np.ndarray, b: np.ndarray) -> float:
    return sum(i * j * singlet_prob(a, b, i, j) for i in (+1, -1) for j in (+1, -1))


def born_trace(rho: np.ndarray, effect: np.ndarray) -> float:
    return float(np.trace(rho @ effect).real)


def sphere_grid(nz: int = 400, nphi: int = 400) -> tuple[np.ndarray, float]:
    """Midpoint equal-area cells: (points (n,3), area per cell)."""
    z = (np.arange(nz) + 0.5) / nz * 2.0 - 1.0
    phi = (np.arange(nphi) + 0.5) / nphi * 2.0 * np.pi
    zz, pp = np.meshgrid(z, phi, indexing="ij")
    r = np.sqrt(np.maximum(0.0, 1.0 - zz**2))
    pts = np.stack([r * np.cos(pp), r * np.sin(pp), zz], axis=-1).reshape(-1, 3)
    return pts, 4.0 * np.pi / (nz * nphi)


def quad_sphere(f, nz: int = 400, nphi: int = 400) -> float:
    pts, area = sphere_grid(nz, nphi)
    return float(np.sum(f(pts)) * area)


def hall_marginal(pts: np.ndarray, a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """One particle's ontic marginal of the antipodal singlet model."""
    c = float(np.clip(a @ b, -1.0, 1.0))
    if abs(abs(c) - 1.0) < 1e-12:
        return np.full(pts.shape[0], 1.0 / (4.0 * np.pi))
    phi = np.arccos(c)
    t = 1.0 - 2.0 * phi / np.pi
    s = np.where((pts @ a) * (pts @ b) >= 0.0, 1.0, -1.0)
    return (1.0 + c * s) / (1.0 + t * s) / (4.0 * np.pi)


def hall_tv(a: np.ndarray, b1: np.ndarray, b2: np.ndarray, nz: int = 800, nphi: int = 800) -> float:
    """Total variation between the lam marginals of contexts (a,b1) and (a,b2)."""
    pts, area = sphere_grid(nz, nphi)
    diff = np.abs(hall_marginal(pts, a, b1) - hall_marginal(pts, a, b2))
    return 0.5 * float(diff.sum() * area)


def ks2_acceptance(a: np.ndarray, b: np.ndarray, nz: int = 800, nphi: int = 800) -> float:
    """integral of step(lam.a)|lam.b|/(2 pi): the protocol acceptance rate."""
    return quad_sphere(
        lambda pts: ((pts @ a) >= 0.0) * np.abs(pts @ b) / (2.0 * np.pi), nz, nphi
    )


def hemisphere_mean(a: np.ndarray, nz: int = 800, nphi: int = 800) -> np.ndarray:
    """First moment of the uniform hemisphere around a (closed form: a/2)."""
    pts, area = sphere_grid(nz, nphi)
    w = ((pts @ a) >= 0.0) / (2.0 * np.pi)
    return (pts * w[:, None]).sum(axis=0) * area
