"""Discrete model with one ontic value per measurement outcome.

For a preparation rho (pure or mixed) measured with POVM {E_1..E_X}, the
ontic space is {lambda_1..lambda_X}: the density of lambda_j is the Born
weight tr(rho E_j) and the response is the point mass on outcome j.  Valid in
any finite dimension and for any outcome count.
"""

from __future__ import annotations

import numpy as np

from ..constants import TOL
from ..quantum import (
    DensityMatrix,
    Povm,
    ProjectiveBasis,
    StateVector,
    born_probability,
    random_basis,
    random_povm,
    random_state,
)
from .base import (
    DiscreteIndex,
    HiddenVariableModel,
    ModelContext,
    OnticKind,
    ReferenceMeasure,
)


class GeneralizedBrans(HiddenVariableModel):
    name = "gbrans"
    reference_measure = ReferenceMeasure.COUNTING
    ontic_kind = OnticKind.DISCRETE
    is_deterministic = True

    def validate_context(self, ctx: ModelContext) -> None:
        if not isinstance(ctx.preparation, (StateVector, DensityMatrix)):
            raise TypeError("preparation must be a StateVector or DensityMatrix")
        if not isinstance(ctx.measurement, Povm):
            raise TypeError("measurement must be a Povm")
        if ctx.preparation.dim != ctx.measurement.dim:
            raise ValueError("preparation and measurement dimensions differ")

    def outcome_labels(self, ctx: ModelContext) -> tuple[str, ...]:
        return ctx.measurement.labels

    def outcome_probabilities(self, ctx: ModelContext) -> np.ndarray:
        """Born weights of all outcomes, in label order.

        Uses ket inner products when both sides expose amplitudes (bitwise
        reproducible against |<e_j|psi>|^2), the trace otherwise.
        """
        prep, M = ctx.preparation, ctx.measurement
        if isinstance(M, ProjectiveBasis) and isinstance(prep, StateVector):
            return np.array([ket.overlap_sq(prep) for ket in M.kets])
        return np.array([born_probability(prep, M, label) for label in M.labels])

    def born_reference(self, ctx: ModelContext) -> dict[str, float]:
        p = self.outcome_probabilities(ctx)
        return {label: float(p[k]) for k, label in enumerate(ctx.measurement.labels)}

    def random_context(self, rng: np.random.Generator, dim: int = 2) -> ModelContext:
        prep = random_state(dim, rng)
        if rng.random() < 0.3:
            return ModelContext(prep, random_povm(dim, dim + 1, rng))
        return ModelContext(prep, random_basis(dim, rng))

    def sample_arrays(self, ctx: ModelContext, n: int, rng: np.random.Generator) -> dict:
        cum = np.cumsum(self.outcome_probabilities(ctx))
        u = rng.random(n) * cum[-1]
        j = np.minimum(np.searchsorted(cum, u, side="right"), cum.size - 1)
        return {"j": j}

    def density_arrays(self, arrays: dict, ctx: ModelContext) -> np.ndarray:
        j = np.asarray(arrays["j"], dtype=int)
        p = self.outcome_probabilities(ctx)
        if j.size and (j.min() < 0 or j.max() >= p.size):
            raise IndexError(f"ontic index out of range for {p.size} outcomes")
        return p[j]

    def outcome_index_arrays(self, arrays: dict, ctx: ModelContext) -> np.ndarray:
        return np.asarray(arrays["j"], dtype=int)

    def point_from_arrays(self, arrays: dict, i: int, ctx: ModelContext) -> DiscreteIndex:
        return DiscreteIndex(int(arrays["j"][i]))

    def arrays_from_point(self, lam, ctx: ModelContext) -> dict:
        if not isinstance(lam, DiscreteIndex):
            raise TypeError(f"expected DiscreteIndex, got {type(lam).__name__}")
        return {"j": np.array([lam.j], dtype=int)}

    def support_mass_exact(self, ctx_from: ModelContext, ctx_support: ModelContext) -> float:
        """Mass of p(.|ctx_from) on the support of p(.|ctx_support), exactly.

        Weights at or below the support threshold are structural zeros and
        contribute nothing, so disjoint supports give literally 0.0.
        """
        p = self.outcome_probabilities(ctx_from)
        q = self.outcome_probabilities(ctx_support)
        mask = (q > TOL.support) & (p > TOL.support)
        return float(p[mask].sum())
