"""Sphere sampler contracts: supports, moments, determinism."""

import numpy as np
import pytest

import oracles
from mdhv.models import stream
from mdhv.sphere import (
    cosine_hemisphere,
    embed_local,
    stratified_sphere_points,
    tangent_frame,
    uniform_cap,
    uniform_hemisphere,
    uniform_sphere,
)

AXIS = np.array([0.3, -0.5, 0.8124038404635961])
AXIS = AXIS / np.linalg.norm(AXIS)


def test_tangent_frame_orthonormal():
    t1, t2 = tangent_frame(AXIS)
    for v in (t1, t2):
        assert np.linalg.norm(v) == pytest.approx(1.0, abs=1e-12)
        assert abs(v @ AXIS) < 1e-12
    assert abs(t1 @ t2) < 1e-12


def test_embed_preserves_unit_norm():
    rng = stream(1)
    z = rng.uniform(-1, 1, 100)
    phi = rng.uniform(0, 2 * np.pi, 100)
    pts = embed_local(AXIS, z, phi)
    assert np.allclose(np.linalg.norm(pts, axis=1), 1.0, atol=1e-12)
    assert np.allclose(pts @ AXIS, z, atol=1e-12)


def test_uniform_sphere_moments():
    pts = uniform_sphere(stream(2), 200_000)
    assert np.allclose(pts.mean(axis=0), 0.0, atol=0.01)
    assert pts[:, 2].var() == pytest.approx(1.0 / 3.0, abs=0.01)


def test_uniform_hemisphere_support_and_mean():
    pts = uniform_hemisphere(stream(3), 200_000, AXIS)
    assert np.all(pts @ AXIS >= 0.0)
    oracle = oracles.hemisphere_mean(AXIS)
    assert np.allclose(oracle, AXIS / 2.0, atol=2e-3)  # quadrature vs closed form
    assert np.allclose(pts.mean(axis=0), AXIS / 2.0, atol=5e-3)


def test_cosine_hemisphere_density():
    # z along the axis should follow p(z) = 2z: mean 2/3, second moment 1/2
    z = cosine_hemisphere(stream(4), 200_000, AXIS) @ AXIS
    assert np.all(z >= 0.0)
    assert z.mean() == pytest.approx(2.0 / 3.0, abs=3e-3)
    assert (z**2).mean() == pytest.approx(0.5, abs=3e-3)


def test_uniform_cap_support_and_uniformity():
    zmin = 0.25
    z = uniform_cap(stream(5), 200_000, AXIS, zmin) @ AXIS
    assert np.all(z >= zmin - 1e-12)
    assert z.mean() == pytest.approx((1 + zmin) / 2.0, abs=3e-3)


def test_stratified_points_are_antithetic():
    pts = stratified_sphere_points(10_000, stream(6))
    half = pts.shape[0] // 2
    assert np.array_equal(pts[:half], -pts[half:])
    # equal-weight cells integrate constants exactly
    assert np.allclose(np.linalg.norm(pts, axis=1), 1.0, atol=1e-12)


def test_samplers_are_deterministic():
    a = uniform_sphere(stream(7), 1000)
    b = uniform_sphere(stream(7), 1000)
    assert np.array_equal(a, b)
