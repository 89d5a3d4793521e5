"""Deterministic model on a one-dimensional interval of bins.

For |psi> measured in an orthonormal basis {|e_i>}, set x_i = |<e_i|psi>|.
The ontic variable lives on [0, sum_i x_i], split into consecutive bins of
length x_i; the density is the constant x_i on bin i (total mass
sum x_i^2 = 1) and the response is the point mass on e_i for points in
bin i.  Boundary points belong to the lower bin.
"""

from __future__ import annotations

import numpy as np

from ..quantum import ProjectiveBasis, StateVector, random_basis, random_state
from .base import (
    HiddenVariableModel,
    IntervalPoint,
    ModelContext,
    OnticKind,
    ReferenceMeasure,
)


class IntervalModel(HiddenVariableModel):
    name = "interval"
    reference_measure = ReferenceMeasure.LEBESGUE_INTERVAL
    ontic_kind = OnticKind.INTERVAL
    is_deterministic = True

    def validate_context(self, ctx: ModelContext) -> None:
        if not isinstance(ctx.preparation, StateVector):
            raise TypeError("preparation must be a StateVector")
        if not isinstance(ctx.measurement, ProjectiveBasis):
            raise TypeError("measurement must be a ProjectiveBasis")
        if ctx.preparation.dim != ctx.measurement.dim:
            raise ValueError("preparation and measurement dimensions differ")

    def bin_edges(self, ctx: ModelContext) -> tuple[np.ndarray, np.ndarray]:
        """(x_i amplitudes-magnitudes, cumulative edges [0, c_1, ..., c_n])."""
        psi, M = ctx.preparation, ctx.measurement
        x = np.array([np.sqrt(ket.overlap_sq(psi)) for ket in M.kets])
        return x, np.concatenate([[0.0], np.cumsum(x)])

    def outcome_labels(self, ctx: ModelContext) -> tuple[str, ...]:
        return ctx.measurement.labels

    def born_reference(self, ctx: ModelContext) -> dict[str, float]:
        x, _ = self.bin_edges(ctx)
        return {label: float(x[k] ** 2) for k, label in enumerate(ctx.measurement.labels)}

    def random_context(self, rng: np.random.Generator, dim: int = 2) -> ModelContext:
        return ModelContext(random_state(dim, rng), random_basis(dim, rng))

    def _bin_of(self, pos: np.ndarray, edges: np.ndarray) -> np.ndarray:
        # boundary point = upper edge of bin i -> assigned to bin i ("lower bin")
        idx = np.searchsorted(edges[1:], pos, side="left")
        return np.minimum(idx, edges.size - 2)

    def sample_arrays(self, ctx: ModelContext, n: int, rng: np.random.Generator) -> dict:
        x, edges = self.bin_edges(ctx)
        weights = x * x
        cum = np.cumsum(weights)
        u = rng.random(n) * cum[-1]
        j = np.minimum(np.searchsorted(cum, u, side="right"), cum.size - 1)
        pos = edges[j] + rng.random(n) * x[j]
        return {"x": pos}

    def density_arrays(self, arrays: dict, ctx: ModelContext) -> np.ndarray:
        pos = np.asarray(arrays["x"], dtype=float)
        x, edges = self.bin_edges(ctx)
        idx = self._bin_of(pos, edges)
        out = x[idx]
        out = np.where((pos < 0.0) | (pos > edges[-1]), 0.0, out)
        return out

    def outcome_index_arrays(self, arrays: dict, ctx: ModelContext) -> np.ndarray:
        pos = np.asarray(arrays["x"], dtype=float)
        _, edges = self.bin_edges(ctx)
        return self._bin_of(pos, edges)

    def point_from_arrays(self, arrays: dict, i: int, ctx: ModelContext) -> IntervalPoint:
        return IntervalPoint(float(arrays["x"][i]))

    def arrays_from_point(self, lam, ctx: ModelContext) -> dict:
        if not isinstance(lam, IntervalPoint):
            raise TypeError(f"expected IntervalPoint, got {type(lam).__name__}")
        return {"x": np.array([lam.x], dtype=float)}
