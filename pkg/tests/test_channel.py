"""Channel protocol: hemisphere sender, weighted filter, cost accounting."""

import io
import json

import numpy as np
import pytest

import oracles
from mdhv import channel
from mdhv.constants import TOL
from mdhv.models import SpherePoint, stream
from mdhv.quantum import BlochVector, random_bloch

Z = BlochVector(0, 0, 1)
X = BlochVector(1, 0, 0)
DEG60 = BlochVector.from_polar(np.pi / 3, 0.0)


class TestAliceSend:
    def test_support(self):
        rng = stream(601)
        a = random_bloch(rng)
        for _ in range(200):
            lam = channel.alice_send(a, rng)
            assert lam.vec.dot(a) >= 0.0

    def test_first_moment_is_half_axis(self):
        rng = stream(603)
        a = random_bloch(rng)
        assert np.allclose(oracles.hemisphere_mean(a.as_array()), a.as_array() / 2.0, atol=2e-3)
        alice = channel.AliceSender(a, rng)
        _, vecs = alice.emit(1_000_000)
        assert np.allclose(vecs.mean(axis=0), a.as_array() / 2.0, atol=2e-3)

    def test_uniformity_chi_square(self):
        # equal-area cells on the hemisphere around +z: z in [0,1] x azimuth
        rng = stream(605)
        alice = channel.AliceSender(Z, rng)
        _, vecs = alice.emit(400_000)
        nz, nphi = 10, 10
        zi = np.minimum((vecs[:, 2] * nz).astype(int), nz - 1)
        pi = np.minimum(
            ((np.arctan2(vecs[:, 1], vecs[:, 0]) + np.pi) / (2 * np.pi) * nphi).astype(int),
            nphi - 1,
        )
        counts = np.bincount(zi * nphi + pi, minlength=nz * nphi)
        expected = vecs.shape[0] / (nz * nphi)
        stat = float(((counts - expected) ** 2 / expected).sum())
        dof = nz * nphi - 1
        assert stat < dof + 5.0 * np.sqrt(2.0 * dof)


class TestBobFilter:
    def test_parallel_always_accepts(self):
        rng = stream(607)
        for sign in (+1, -1):
            lam = SpherePoint(BlochVector(0, 0, float(sign)))
            assert all(channel.bob_filter(lam, Z, rng) for _ in range(100))

    def test_orthogonal_never_accepts(self):
        rng = stream(609)
        lam = SpherePoint(X)
        assert not any(channel.bob_filter(lam, Z, rng) for _ in range(100))

    def test_acceptance_rate_half_any_axes(self):
        rng = stream(611)
        for trial in range(5):
            a, b = random_bloch(rng), random_bloch(rng)
            assert oracles.ks2_acceptance(a.as_array(), b.as_array()) == pytest.approx(
                0.5, abs=2e-3
            )
            t = channel.run_channel(a, b, 30_000, seed=trial)
            assert t.acceptance_rate() == pytest.approx(0.5, abs=0.01)

    def test_acceptance_rate_at_scale(self):
        rng = stream(613)
        a, b = random_bloch(rng), random_bloch(rng)
        t = channel.run_channel(a, b, 500_000, seed=613)
        assert t.acceptance_rate() == pytest.approx(0.5, abs=2e-3)


class TestBobOutcome:
    def test_signs(self):
        assert channel.bob_outcome(SpherePoint(Z), Z) == "+b"
        assert channel.bob_outcome(SpherePoint(BlochVector(0, 0, -1)), Z) == "-b"
        # sign-at-zero convention: orthogonal reads +
        assert channel.bob_outcome(SpherePoint(X), Z) == "+b"


class TestRunChannel:
    def test_aligned_axes_all_plus(self):
        t = channel.run_channel(Z, Z, 20_000, seed=11)
        assert t.outcome_counts["-b"] == 0
        assert t.outcome_frequencies()["+b"] == 1.0

    def test_sixty_degree_frequencies(self):
        t = channel.run_channel(Z, DEG60, 200_000, seed=13)
        assert t.outcome_frequencies()["+b"] == pytest.approx(0.75, abs=5e-3)

    def test_sent_accepted_ratio_two(self):
        t = channel.run_channel(Z, DEG60, 100_000, seed=17)
        assert t.sent / t.accepted == pytest.approx(2.0, abs=0.02)

    def test_accepted_exactly_target(self):
        t = channel.run_channel(Z, X, 12_345, seed=19)
        assert t.accepted == 12_345
        assert sum(t.outcome_counts.values()) == t.accepted

    def test_transcript_bit_identical_across_runs(self):
        t1 = channel.run_channel(Z, DEG60, 5_000, seed=23)
        t2 = channel.run_channel(Z, DEG60, 5_000, seed=23)
        assert t1.to_json() == t2.to_json()

    def test_json_field_order(self):
        t = channel.run_channel(Z, X, 100, seed=29)
        assert list(json.loads(t.to_json())) == [
            "alice_axis",
            "bob_axis",
            "sent",
            "accepted",
            "outcome_counts",
            "nominal_bits_per_round",
            "seed",
        ]
        assert t.nominal_bits_per_round == 2.0

    def test_trace_schema(self):
        buf = io.StringIO()
        t = channel.run_channel(Z, DEG60, 500, seed=31, trace=buf)
        lines = buf.getvalue().strip().split("\n")
        assert lines[0] == "round_id,lambda_x,lambda_y,lambda_z,accepted,outcome"
        assert len(lines) - 1 == t.sent
        accepted_rows = [ln for ln in lines[1:] if ln.split(",")[4] == "1"]
        assert len(accepted_rows) == t.accepted
        assert all(ln.split(",")[5] in ("+b", "-b") for ln in accepted_rows)
        # plain locale-free decimal columns, round-trippable
        first = lines[1].split(",")
        vec = np.array([float(first[1]), float(first[2]), float(first[3])])
        assert np.linalg.norm(vec) == pytest.approx(1.0, abs=1e-12)

    def test_accepted_distribution_matches_weighted_density(self):
        # aligned axes: accepted density z/pi on the upper hemisphere, so a
        # (z, phi) cell carries exactly (z2^2 - z1^2) * dphi / (2 pi)
        t_seed = 37
        alice = channel.AliceSender(Z, stream(t_seed, 1))
        bob = channel.BobFilter(Z, stream(t_seed, 2))
        _, vecs = alice.emit(400_000)
        accept, _ = bob.process(np.arange(vecs.shape[0]), vecs)
        kept = vecs[accept]
        nz, nphi = 10, 10
        z_edges = np.linspace(0.0, 1.0, nz + 1)
        zi = np.minimum(np.searchsorted(z_edges, kept[:, 2], side="right") - 1, nz - 1)
        pi = np.minimum(
            ((np.arctan2(kept[:, 1], kept[:, 0]) + np.pi) / (2 * np.pi) * nphi).astype(int),
            nphi - 1,
        )
        counts = np.bincount(zi * nphi + pi, minlength=nz * nphi).reshape(nz, nphi)
        cell_prob = (z_edges[1:] ** 2 - z_edges[:-1] ** 2)[:, None] / nphi
        expected = kept.shape[0] * cell_prob
        stat = float(((counts - expected) ** 2 / expected).sum())
        dof = nz * nphi - 1
        assert stat < dof + 5.0 * np.sqrt(2.0 * dof)

    def test_accepted_distribution_matches_weighted_density_generic_angle(self):
        # b at 60 deg from a = +z: expected cell masses of step(z)|lam.b|/pi
        # from a 4x4 midpoint sub-grid per cell (bias far below multinomial
        # noise), chi-square at one million accepted rounds
        b = DEG60.as_array()
        alice = channel.AliceSender(Z, stream(43, 1))
        bob = channel.BobFilter(DEG60, stream(43, 2))
        kept = []
        total = 0
        while total < 1_000_000:
            _, vecs = alice.emit(1 << 17)
            accept, _ = bob.process(np.arange(vecs.shape[0]), vecs)
            kept.append(vecs[accept])
            total += int(accept.sum())
        kept = np.concatenate(kept)[:1_000_000]
        nz, nphi, sub = 8, 8, 4
        z_edges = np.linspace(0.0, 1.0, nz + 1)
        p_edges = np.linspace(-np.pi, np.pi, nphi + 1)
        zi = np.minimum(np.searchsorted(z_edges, kept[:, 2], side="right") - 1, nz - 1)
        pi_idx = np.minimum(
            np.searchsorted(p_edges, np.arctan2(kept[:, 1], kept[:, 0]), side="right") - 1,
            nphi - 1,
        )
        counts = np.bincount(zi * nphi + pi_idx, minlength=nz * nphi).astype(float)
        zs = np.linspace(0, 1, nz * sub, endpoint=False) + 0.5 / (nz * sub)
        ps = np.linspace(-np.pi, np.pi, nphi * sub, endpoint=False) + np.pi / (nphi * sub)
        zz, pp = np.meshgrid(zs, ps, indexing="ij")
        r = np.sqrt(np.maximum(0.0, 1.0 - zz**2))
        lam = np.stack([r * np.cos(pp), r * np.sin(pp), zz], axis=-1)
        dens = np.abs(lam @ b) / np.pi
        cell = dens.reshape(nz, sub, nphi, sub).mean(axis=(1, 3)) * (2 * np.pi / (nz * nphi))
        expected = (cell / cell.sum()).ravel() * kept.shape[0]
        stat = float(((counts - expected) ** 2 / expected).sum())
        dof = nz * nphi - 1
        assert stat < dof + 5.0 * np.sqrt(2.0 * dof)

    def test_target_must_be_positive(self):
        with pytest.raises(ValueError):
            channel.run_channel(Z, X, 0, seed=1)


class TestInformationAccounting:
    def test_closed_form_entropies(self):
        rep = channel.mutual_information_report()
        assert rep.h_a == pytest.approx(np.log(4 * np.pi), abs=1e-6)
        assert rep.h_lambda == pytest.approx(np.log(4 * np.pi), abs=1e-6)

    def test_joint_entropy_quadrature(self):
        rep = channel.mutual_information_report()
        assert rep.h_joint == pytest.approx(np.log(8 * np.pi**2), abs=1e-3)

    def test_mutual_information_is_one_bit(self):
        rep = channel.mutual_information_report()
        assert rep.mutual_information == pytest.approx(np.log(2.0), abs=1e-3)
        assert rep.mutual_information == rep.h_a + rep.h_lambda - rep.h_joint

    def test_info_report_serializes(self):
        rep = channel.mutual_information_report()
        assert list(json.loads(rep.to_json())) == ["h_a", "h_lambda", "h_joint", "mutual_information"]


class TestCommunicationCost:
    def test_ideal_ratio_two_bits(self):
        t = channel.ChannelTranscript(Z, X, 2000, 1000, {"+b": 500, "-b": 500}, 2.0, 1)
        assert channel.communication_cost(t) == pytest.approx(2.0, abs=TOL.arithmetic)

    def test_no_rejection_one_bit(self):
        t = channel.ChannelTranscript(Z, X, 1000, 1000, {"+b": 500, "-b": 500}, 2.0, 1)
        assert channel.communication_cost(t) == pytest.approx(1.0, abs=TOL.arithmetic)

    def test_empirical_transcript(self):
        t = channel.run_channel(Z, DEG60, 100_000, seed=41)
        assert channel.communication_cost(t) == pytest.approx(2.0, abs=0.02)

    def test_empty_transcript_rejected(self):
        t = channel.ChannelTranscript(Z, X, 0, 0, {"+b": 0, "-b": 0}, 2.0, 1)
        with pytest.raises(ValueError):
            channel.communication_cost(t)

    def test_transcript_invariants(self):
        with pytest.raises(ValueError):
            channel.ChannelTranscript(Z, X, 10, 20, {"+b": 20, "-b": 0}, 2.0, 1)
        with pytest.raises(ValueError):
            channel.ChannelTranscript(Z, X, 30, 20, {"+b": 1, "-b": 0}, 2.0, 1)
