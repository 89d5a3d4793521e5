"""Two qubit models on labeled/unlabeled Bloch spheres.

KochenSpecker1: ontic value (lambda_k, lam_hat) with joint density
(1/pi) step(k_hat.lam) step(psi_hat.lam) (psi_hat.lam) per outcome label k of
a qubit projective basis; response is the point mass on k.  The joint is the
normalized object (its per-label masses are the Born weights), and sampling
uses its exact factorization: lam_hat is cosine-weighted around psi_hat and
the label is read off the hemisphere of k_hat that contains it.

KochenSpecker2: preparation along a_hat measured along b_hat; ontic unit
vector with density step(lam.a)|lam.b|/pi, response +b iff lam.b >= 0.
Sampling is rejection from the uniform a-hemisphere with weight |lam.b|.
"""

from __future__ import annotations

import numpy as np

from ..constants import step
from ..quantum import (
    BlochVector,
    ProjectiveBasis,
    StateVector,
    bloch_from_ket,
    ket_from_bloch,
    random_basis,
    random_bloch,
    random_state,
)
from ..sphere import cosine_hemisphere, uniform_hemisphere
from .base import (
    HiddenVariableModel,
    LabeledSphere,
    ModelContext,
    OnticKind,
    ReferenceMeasure,
    SpherePoint,
)


def _qubit_basis_axes(M: ProjectiveBasis) -> np.ndarray:
    """(2, 3) Bloch axes of a qubit projective basis, in label order."""
    return np.stack([bloch_from_ket(ket).as_array() for ket in M.kets])


class KochenSpecker1(HiddenVariableModel):
    name = "ks1"
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
        vec = cosine_hemisphere(rng, n, psi_hat)
        label = np.where(vec @ axes[0] >= 0.0, 0, 1)
        return {"label": label, "vec": vec}

    def density_arrays(self, arrays: dict, ctx: ModelContext) -> np.ndarray:
        psi_hat = bloch_from_ket(ctx.preparation).as_array()
        axes = _qubit_basis_axes(ctx.measurement)
        vec = np.asarray(arrays["vec"], dtype=float)
        label = np.asarray(arrays["label"], dtype=int)
        k_dot = np.einsum("ij,ij->i", vec, axes[label])
        p_dot = vec @ psi_hat
        return (1.0 / np.pi) * step(k_dot) * step(p_dot) * np.maximum(p_dot, 0.0)

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


class KochenSpecker2(HiddenVariableModel):
    name = "ks2"
    reference_measure = ReferenceMeasure.SPHERE_SURFACE
    ontic_kind = OnticKind.SPHERE
    is_deterministic = True

    LABELS = ("+b", "-b")

    def validate_context(self, ctx: ModelContext) -> None:
        if not isinstance(ctx.preparation, StateVector) or ctx.preparation.dim != 2:
            raise TypeError("preparation must be a qubit StateVector")
        if not isinstance(ctx.measurement, BlochVector):
            raise TypeError("measurement must be a single BlochVector axis")

    @staticmethod
    def context(a: BlochVector, b: BlochVector) -> ModelContext:
        """Context for a qubit prepared along a and measured along b."""
        return ModelContext(ket_from_bloch(a), b)

    def _axes(self, ctx: ModelContext) -> tuple[np.ndarray, np.ndarray]:
        return bloch_from_ket(ctx.preparation).as_array(), ctx.measurement.as_array()

    def outcome_labels(self, ctx: ModelContext) -> tuple[str, ...]:
        return self.LABELS

    def born_reference(self, ctx: ModelContext) -> dict[str, float]:
        a, b = self._axes(ctx)
        d = float(np.clip(a @ b, -1.0, 1.0))
        return {"+b": (1.0 + d) / 2.0, "-b": (1.0 - d) / 2.0}

    def random_context(self, rng: np.random.Generator, dim: int = 2) -> ModelContext:
        return self.context(random_bloch(rng), random_bloch(rng))

    def sample_arrays(self, ctx: ModelContext, n: int, rng: np.random.Generator) -> dict:
        a, b = self._axes(ctx)
        out = np.empty((n, 3))
        have = 0
        while have < n:
            todo = n - have
            k = max(32, int(todo * 2.2))
            props = uniform_hemisphere(rng, k, a)
            keep = rng.random(k) < np.abs(props @ b)
            took = min(int(keep.sum()), todo)
            out[have : have + took] = props[keep][:took]
            have += took
        return {"vec": out}

    def density_arrays(self, arrays: dict, ctx: ModelContext) -> np.ndarray:
        a, b = self._axes(ctx)
        vec = np.asarray(arrays["vec"], dtype=float)
        return step(vec @ a) * np.abs(vec @ b) / np.pi

    def outcome_index_arrays(self, arrays: dict, ctx: ModelContext) -> np.ndarray:
        _, b = self._axes(ctx)
        vec = np.asarray(arrays["vec"], dtype=float)
        return np.where(vec @ b >= 0.0, 0, 1)

    def point_from_arrays(self, arrays: dict, i: int, ctx: ModelContext) -> SpherePoint:
        return SpherePoint(BlochVector.from_array(arrays["vec"][i]))

    def arrays_from_point(self, lam, ctx: ModelContext) -> dict:
        if not isinstance(lam, SpherePoint):
            raise TypeError(f"expected SpherePoint, got {type(lam).__name__}")
        return {"vec": lam.vec.as_array()[None, :]}
