"""Singlet model whose hidden variable carries the outcome tags and settings.

The ontic value is (i, j, A_hat, B_hat): the two particles' outcome tags plus
the setting axes they were conditioned on.  The delta factors tying A_hat,
B_hat to the chosen axes are resolved analytically (the stored point carries
the context's axes by construction), leaving a four-point counting density
(1 - i j a.b)/4; the responses are A = i and B = j.

Each particle's tag is correlated only with its local setting: the marginal
weight of tag i is tr(P_singlet |i><i|_a (x) I) = 1/2, a computation the
remote axis never enters.
"""

from __future__ import annotations

import numpy as np

from ..constants import TOL
from ..quantum import (
    BlochVector,
    random_bloch,
    singlet_outcome_probability,
    singlet_state,
    spin_eigenket,
)
from .base import (
    SINGLET,
    AxisPair,
    HiddenVariableModel,
    ModelContext,
    OnticKind,
    ReferenceMeasure,
    SettingsOutcomePair,
    SingletFlag,
)

JOINT_LABELS = ("++", "+-", "-+", "--")
OUTCOME_PAIRS = ((+1, +1), (+1, -1), (-1, +1), (-1, -1))


def singlet_context(a: BlochVector, b: BlochVector) -> ModelContext:
    return ModelContext(SINGLET, AxisPair(a, b))


def _validate_singlet_context(ctx: ModelContext) -> None:
    if not isinstance(ctx.preparation, SingletFlag):
        raise TypeError("preparation must be the singlet flag")
    if not isinstance(ctx.measurement, AxisPair):
        raise TypeError("measurement must be an AxisPair of Bloch axes")


class BransSinglet(HiddenVariableModel):
    name = "brans"
    reference_measure = ReferenceMeasure.COUNTING
    ontic_kind = OnticKind.SETTINGS_PAIR
    is_deterministic = True

    def validate_context(self, ctx: ModelContext) -> None:
        _validate_singlet_context(ctx)

    def outcome_labels(self, ctx: ModelContext) -> tuple[str, ...]:
        return JOINT_LABELS

    def joint_probabilities(self, ctx: ModelContext) -> np.ndarray:
        a, b = ctx.measurement.alice, ctx.measurement.bob
        return np.array([singlet_outcome_probability(a, b, i, j) for i, j in OUTCOME_PAIRS])

    def born_reference(self, ctx: ModelContext) -> dict[str, float]:
        p = self.joint_probabilities(ctx)
        return {label: float(p[k]) for k, label in enumerate(JOINT_LABELS)}

    def random_context(self, rng: np.random.Generator, dim: int = 2) -> ModelContext:
        return singlet_context(random_bloch(rng), random_bloch(rng))

    def sample_arrays(self, ctx: ModelContext, n: int, rng: np.random.Generator) -> dict:
        cum = np.cumsum(self.joint_probabilities(ctx))
        u = rng.random(n) * cum[-1]
        idx = np.minimum(np.searchsorted(cum, u, side="right"), 3)
        return {"idx": idx}

    def density_arrays(self, arrays: dict, ctx: ModelContext) -> np.ndarray:
        idx = np.asarray(arrays["idx"], dtype=int)
        out = self.joint_probabilities(ctx)[idx]
        if "settings_match" in arrays:
            out = out * np.asarray(arrays["settings_match"], dtype=float)
        return out

    def outcome_index_arrays(self, arrays: dict, ctx: ModelContext) -> np.ndarray:
        return np.asarray(arrays["idx"], dtype=int)

    def point_from_arrays(self, arrays: dict, i: int, ctx: ModelContext) -> SettingsOutcomePair:
        oi, oj = OUTCOME_PAIRS[int(arrays["idx"][i])]
        return SettingsOutcomePair(oi, oj, ctx.measurement.alice, ctx.measurement.bob)

    def arrays_from_point(self, lam, ctx: ModelContext) -> dict:
        if not isinstance(lam, SettingsOutcomePair):
            raise TypeError(f"expected SettingsOutcomePair, got {type(lam).__name__}")
        a, b = ctx.measurement.alice, ctx.measurement.bob
        # delta factors resolved analytically: settings from another context carry no mass
        match = (
            abs(lam.alice_axis.dot(a) - 1.0) <= TOL.arithmetic
            and abs(lam.bob_axis.dot(b) - 1.0) <= TOL.arithmetic
        )
        return {
            "idx": np.array([OUTCOME_PAIRS.index((lam.i, lam.j))], dtype=int),
            "settings_match": np.array([match]),
        }

    def marginal_density(self, particle: int, outcome: int, ctx: ModelContext) -> float:
        """Weight of one particle's tag: tr(P_singlet Pi_i (x) I) resp. (I (x) Pi_j).

        Evaluated through the reduced-state trace, which involves only the
        particle's local axis; remote-setting independence is exact.
        """
        self.validate_context(ctx)
        if particle not in (1, 2):
            raise ValueError("particle must be 1 or 2")
        axis = ctx.measurement.alice if particle == 1 else ctx.measurement.bob
        eig = spin_eigenket(axis, outcome)
        proj = eig.projector()
        eye = np.eye(2, dtype=complex)
        op = np.kron(proj, eye) if particle == 1 else np.kron(eye, proj)
        psi = singlet_state().amplitudes
        return float(np.vdot(psi, op @ psi).real)
