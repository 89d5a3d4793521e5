"""Qubit model with uniform half-space supports on the labeled Bloch sphere.

For |psi> measured in a qubit basis with Bloch axes k_hat per label, the
ontic value is (lambda_k, lam_hat) with joint density
(1/4pi) step(k_hat.(psi_hat + lam_hat)): a uniform density on the spherical
cap lam.k >= -psi.k, whose area gives the label exactly its Born weight.
Response is the point mass on the tag's label.  Sampling draws the label with
its Born weight and then lam_hat area-uniformly on the matching cap.
"""

from __future__ import annotations

import numpy as np

from ..constants import step
from ..quantum import BlochVector, ProjectiveBasis, StateVector, bloch_from_ket, random_basis, random_state
from ..sphere import uniform_cap
from .base import (
    HiddenVariableModel,
    LabeledSphere,
    ModelContext,
    OnticKind,
    ReferenceMeasure,
)
from .ks import _qubit_basis_axes


class BellMermin(HiddenVariableModel):
    name = "bellmermin"
    reference_measure = ReferenceMeasure.LABELED_SPHERE
    ontic_kind = OnticKind.LABELED_SPHERE
    is_deterministic = True

    def validate_context(self, ctx: ModelContext) -> None:
        if not isinstance(ctx.preparation, StateVector) or ctx.preparation.dim != 2:
            raise TypeError("preparation must be a qubit StateVector")
        if not isinstance(ctx.measurement, ProjectiveBasis) or ctx.measurement.dim != 2:
            raise TypeError("measurement must be a qubit ProjectiveBasis")

    def outcome_labels(self, ctx: ModelContext) -> tuple[str, ...]:
        return ctx.measurement.labels

    def born_reference(self, ctx: ModelContext) -> dict[str, float]:
        psi, M = ctx.preparation, ctx.measurement
        return {label: ket.overlap_sq(psi) for label, ket in zip(M.labels, M.kets)}

    def random_context(self, rng: np.random.Generator, dim: int = 2) -> ModelContext:
        return ModelContext(random_state(2, rng), random_basis(2, rng))

    def sample_arrays(self, ctx: ModelContext, n: int, rng: np.random.Generator) -> dict:
        psi_hat = bloch_from_ket(ctx.preparation).as_array()
        axes = _qubit_basis_axes(ctx.measurement)
        p0 = ctx.measurement.kets[0].overlap_sq(ctx.preparation)
        label = (rng.random(n) >= p0).astype(int)
        # cap {lam : lam.k >= -psi.k}, area-uniform, per sampled label
        d = np.einsum("ij,j->i", axes[label], psi_hat)
        vec = np.empty((n, 3))
        for tag in (0, 1):
            mask = label == tag
            m = int(mask.sum())
            if m:
                vec[mask] = uniform_cap(rng, m, axes[tag], -d[mask])
        return {"label": label, "vec": vec}

    def density_arrays(self, arrays: dict, ctx: ModelContext) -> np.ndarray:
        psi_hat = bloch_from_ket(ctx.preparation).as_array()
        axes = _qubit_basis_axes(ctx.measurement)
        vec = np.asarray(arrays["vec"], dtype=float)
        label = np.asarray(arrays["label"], dtype=int)
        k_hat = axes[label]
        return step(np.einsum("ij,ij->i", k_hat, psi_hat + vec)) / (4.0 * np.pi)

    def outcome_index_arrays(self, arrays: dict, ctx: ModelContext) -> np.ndarray:
        return np.asarray(arrays["label"], dtype=int)

    def point_from_arrays(self, arrays: dict, i: int, ctx: ModelContext) -> LabeledSphere:
        return LabeledSphere(
            label=ctx.measurement.labels[int(arrays["label"][i])],
            vec=BlochVector.from_array(arrays["vec"][i]),
        )

    def arrays_from_point(self, lam, ctx: ModelContext) -> dict:
        if not isinstance(lam, LabeledSphere):
            raise TypeError(f"expected LabeledSphere, got {type(lam).__name__}")
        return {
            "label": np.array([ctx.measurement.index(lam.label)], dtype=int),
            "vec": lam.vec.as_array()[None, :],
        }
