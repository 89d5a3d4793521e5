"""Quantum-core oracle: construction invariants and closed-form values."""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from mdhv.constants import TOL
from mdhv.models import stream
from mdhv.quantum import (
    BlochVector,
    DensityMatrix,
    Povm,
    ProjectiveBasis,
    StateVector,
    bloch_from_ket,
    born_distribution,
    born_probability,
    ket_from_bloch,
    orthonormal_basis_containing,
    random_basis,
    random_bloch,
    random_povm,
    random_state,
    singlet_expectation,
    singlet_outcome_probability,
    singlet_state,
    spin_eigenket,
)

S = 1.0 / np.sqrt(2.0)
ZERO = StateVector([1, 0])
ONE = StateVector([0, 1])
PLUS = StateVector([S, S])
MINUS = StateVector([S, -S])
Z_BASIS = ProjectiveBasis([ZERO, ONE])


def distinguishing_povm() -> Povm:
    # three-outcome POVM separating |0> and |+| up to an inconclusive element
    w = np.sqrt(2.0) / (1.0 + np.sqrt(2.0))
    e1 = w * ONE.projector()
    e2 = w * MINUS.projector()
    return Povm([("E1", e1), ("E2", e2), ("E3", np.eye(2) - e1 - e2)])


class TestConstruction:
    def test_state_must_be_normalized(self):
        with pytest.raises(ValueError):
            StateVector([1.0, 1.0])

    def test_state_needs_dim_two(self):
        with pytest.raises(ValueError):
            StateVector([1.0])

    def test_density_checks(self):
        with pytest.raises(ValueError):
            DensityMatrix([[1.0, 0.5j], [0.5j, 0.0]])  # not Hermitian
        with pytest.raises(ValueError):
            DensityMatrix([[2.0, 0.0], [0.0, -1.0]])  # not PSD
        with pytest.raises(ValueError):
            DensityMatrix(np.eye(2))  # trace 2

    def test_povm_checks(self):
        with pytest.raises(ValueError):
            Povm([("a", np.eye(2)), ("a", np.zeros((2, 2)))])  # duplicate labels
        with pytest.raises(ValueError):
            Povm([("a", 0.5 * np.eye(2))])  # does not sum to identity

    def test_projective_basis_rejects_nonorthogonal(self):
        with pytest.raises(ValueError):
            ProjectiveBasis([ZERO, PLUS])

    def test_random_povm_valid(self):
        rng = stream(3)
        for dim in (2, 3, 4):
            M = random_povm(dim, dim + 1, rng)
            assert len(M) == dim + 1

    def test_bloch_vector_unit_norm(self):
        with pytest.raises(ValueError):
            BlochVector(1.0, 1.0, 0.0)


class TestBornProbability:
    def test_eigenstate(self):
        assert born_probability(ZERO.to_density(), Z_BASIS, "0") == 1.0

    def test_symmetry(self):
        assert born_probability(PLUS.to_density(), Z_BASIS, "0") == pytest.approx(0.5, abs=TOL.structural)

    def test_distinguishing_povm_zero_entry(self):
        assert born_probability(ZERO.to_density(), distinguishing_povm(), "E1") == 0.0

    def test_distinguishing_povm_inconclusive_entry(self):
        M = distinguishing_povm()
        got = born_probability(ZERO.to_density(), M, "E2")
        oracle = oracles.born_trace(ZERO.projector(), M.operator("E2"))
        assert got == pytest.approx(oracle, abs=TOL.arithmetic)
        assert got == pytest.approx(np.sqrt(2.0) / (2.0 * (1.0 + np.sqrt(2.0))), abs=TOL.structural)

    def test_unknown_label(self):
        with pytest.raises(KeyError):
            born_probability(ZERO.to_density(), Z_BASIS, "up")

    def test_dimension_mismatch(self):
        with pytest.raises(ValueError):
            born_probability(singlet_state().to_density(), Z_BASIS, "0")

    @given(st.integers(min_value=0, max_value=10_000))
    @settings(max_examples=40, deadline=None)
    def test_distribution_normalized(self, seed):
        rng = stream(seed)
        dim = int(rng.integers(2, 6))
        M = random_basis(dim, rng) if rng.random() < 0.5 else random_povm(dim, dim + 2, rng)
        p = born_distribution(random_state(dim, rng), M)
        assert sum(p.values()) == pytest.approx(1.0, abs=TOL.structural)
        assert all(v >= 0.0 for v in p.values())


class TestBlochParametrization:
    def test_z_axis_gives_zero_ket(self):
        assert ket_from_bloch(BlochVector(0, 0, 1)).overlap_sq(ZERO) == pytest.approx(1.0, abs=TOL.structural)

    def test_x_axis_gives_plus_ket(self):
        assert ket_from_bloch(BlochVector(1, 0, 0)).overlap_sq(PLUS) == pytest.approx(1.0, abs=TOL.structural)

    def test_bloch_requires_qubit(self):
        with pytest.raises(ValueError):
            bloch_from_ket(singlet_state())

    @given(st.integers(min_value=0, max_value=10_000))
    @settings(max_examples=60, deadline=None)
    def test_overlap_matches_half_angle_formula(self, seed):
        rng = stream(seed)
        v, w = random_bloch(rng), random_bloch(rng)
        got = ket_from_bloch(v).overlap_sq(ket_from_bloch(w))
        assert got == pytest.approx((1.0 + v.dot(w)) / 2.0, abs=TOL.structural)

    def test_round_trip_fixes_the_ray(self):
        rng = stream(7)
        for _ in range(1000):
            s = random_state(2, rng)
            assert ket_from_bloch(bloch_from_ket(s)).overlap_sq(s) == pytest.approx(
                1.0, abs=TOL.structural
            )


class TestSinglet:
    def test_perfect_anticorrelation(self):
        a = random_bloch(stream(1))
        assert singlet_outcome_probability(a, a, +1, +1) == pytest.approx(0.0, abs=TOL.arithmetic)
        assert singlet_expectation(a, a) == pytest.approx(-1.0, abs=TOL.arithmetic)

    def test_orthogonal_axes(self):
        a, b = BlochVector(0, 0, 1), BlochVector(1, 0, 0)
        for i in (+1, -1):
            for j in (+1, -1):
                assert singlet_outcome_probability(a, b, i, j) == 0.25
        assert singlet_expectation(a, b) == 0.0

    def test_sixty_degrees(self):
        a = BlochVector(0, 0, 1)
        b = BlochVector.from_polar(np.pi / 3.0, 0.0)
        oracle = oracles.singlet_prob(a.as_array(), b.as_array(), +1, -1)
        assert oracle == pytest.approx(0.375, abs=TOL.structural)
        assert singlet_outcome_probability(a, b, +1, -1) == pytest.approx(oracle, abs=TOL.structural)
        assert singlet_expectation(a, b) == pytest.approx(-0.5, abs=TOL.structural)

    def test_projector_oracle_over_random_pairs(self):
        rng = stream(11)
        for _ in range(1000):
            a, b = random_bloch(rng), random_bloch(rng)
            assert oracles.singlet_expectation_sum(a.as_array(), b.as_array()) == pytest.approx(
                singlet_expectation(a, b), abs=TOL.structural
            )

    def test_expectation_equals_outcome_sum(self):
        rng = stream(13)
        for _ in range(200):
            a, b = random_bloch(rng), random_bloch(rng)
            total = sum(
                i * j * singlet_outcome_probability(a, b, i, j)
                for i in (+1, -1)
                for j in (+1, -1)
            )
            assert total == pytest.approx(singlet_expectation(a, b), abs=TOL.arithmetic)

    def test_outcomes_sum_to_one(self):
        rng = stream(17)
        a, b = random_bloch(rng), random_bloch(rng)
        total = sum(
            singlet_outcome_probability(a, b, i, j) for i in (+1, -1) for j in (+1, -1)
        )
        assert total == pytest.approx(1.0, abs=TOL.arithmetic)

    def test_spin_eigenkets_are_eigenstates(self):
        rng = stream(19)
        axis = random_bloch(rng)
        proj_plus = oracles.spin_projector(axis.as_array(), +1)
        ket = spin_eigenket(axis, +1)
        assert np.vdot(ket.amplitudes, proj_plus @ ket.amplitudes).real == pytest.approx(
            1.0, abs=TOL.structural
        )


class TestBasisCompletion:
    def test_first_ket_is_exactly_phi(self):
        rng = stream(23)
        for dim in (2, 3, 4, 5):
            phi = random_state(dim, rng)
            M = orthonormal_basis_containing(phi)
            assert np.array_equal(M.kets[0].amplitudes, phi.amplitudes)

    def test_completion_is_a_valid_basis(self):
        rng = stream(29)
        for dim in (2, 3, 4, 5, 8):
            phi = random_state(dim, rng)
            M = orthonormal_basis_containing(phi)  # ProjectiveBasis validates on build
            assert len(M) == dim
