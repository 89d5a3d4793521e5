"""Singlet model on antipodal sphere pairs, correlated with both settings.

The ontic value is the pair (lam1, lam2 = -lam1).  With c = a.b,
phi the angle between the axes, t = 1 - 2 phi/pi, and
s = sign((lam1.a)(lam1.b)), the density of lam1 over the sphere is

    (1/4pi) (1 + c s) / (1 + t s)

(the antipodal delta is resolved analytically, so the declared reference
measure is the sphere measure of the first component).  Responses are
A = sign(lam1.a), B = sign(lam2.b); joint statistics equal the singlet's
(1 - x y a.b)/4.  Unlike the tag-based singlet model, this marginal depends
on both parties' axes for generic settings.

Sampling is rejection from the uniform sphere with the analytic envelope
max of the two branch values; aligned or anti-aligned axes (|a.b| = 1) are
the exact uniform-sphere limit and bypass rejection (the vanishing branch
sits on a vanishing region there, so the formula degenerates to 0/0).
"""

from __future__ import annotations

import numpy as np

from ..constants import TOL, sign_pm
from ..quantum import BlochVector, random_bloch, singlet_outcome_probability
from .base import (
    AntipodalPair,
    HiddenVariableModel,
    ModelContext,
    OnticKind,
    ReferenceMeasure,
)
from .brans import JOINT_LABELS, _validate_singlet_context, singlet_context


class HallSinglet(HiddenVariableModel):
    name = "hall"
    reference_measure = ReferenceMeasure.SPHERE_SURFACE
    ontic_kind = OnticKind.ANTIPODAL
    is_deterministic = True

    def validate_context(self, ctx: ModelContext) -> None:
        _validate_singlet_context(ctx)

    def outcome_labels(self, ctx: ModelContext) -> tuple[str, ...]:
        return JOINT_LABELS

    def born_reference(self, ctx: ModelContext) -> dict[str, float]:
        a, b = ctx.measurement.alice, ctx.measurement.bob
        return {
            "++": singlet_outcome_probability(a, b, +1, +1),
            "+-": singlet_outcome_probability(a, b, +1, -1),
            "-+": singlet_outcome_probability(a, b, -1, +1),
            "--": singlet_outcome_probability(a, b, -1, -1),
        }

    def random_context(self, rng: np.random.Generator, dim: int = 2) -> ModelContext:
        return singlet_context(random_bloch(rng), random_bloch(rng))

    # -- marginal machinery ---------------------------------------------------

    def _branch_values(self, ctx: ModelContext) -> tuple[float, float, bool]:
        """(value on s=+1, value on s=-1, degenerate?) of the lam1 density * 4pi."""
        a, b = ctx.measurement.alice, ctx.measurement.bob
        c = float(np.clip(a.dot(b), -1.0, 1.0))
        if abs(1.0 - abs(c)) < TOL.structural:
            return 1.0, 1.0, True
        phi = float(np.arccos(c))
        t = 1.0 - 2.0 * phi / np.pi
        return (1.0 + c) / (1.0 + t), (1.0 - c) / (1.0 - t), False

    def marginal_values(self, vecs: np.ndarray, ctx: ModelContext, particle: int = 1) -> np.ndarray:
        """Density of one particle's ontic vector at each row of vecs.

        The density is antipodally even, so both particles share the same
        marginal as a function on the sphere; `particle` is kept for
        interface symmetry.
        """
        if particle not in (1, 2):
            raise ValueError("particle must be 1 or 2")
        g_plus, g_minus, _ = self._branch_values(ctx)
        a = ctx.measurement.alice.as_array()
        b = ctx.measurement.bob.as_array()
        vecs = np.asarray(vecs, dtype=float)
        s = sign_pm(vecs @ a) * sign_pm(vecs @ b)
        return np.where(s > 0, g_plus, g_minus) / (4.0 * np.pi)

    # -- model interface --------------------------------------------------------

    def sample_arrays(self, ctx: ModelContext, n: int, rng: np.random.Generator) -> dict:
        from ..sphere import uniform_sphere

        g_plus, g_minus, degenerate = self._branch_values(ctx)
        if degenerate:
            return {"vec": uniform_sphere(rng, n)}
        a = ctx.measurement.alice.as_array()
        b = ctx.measurement.bob.as_array()
        envelope = max(g_plus, g_minus)
        out = np.empty((n, 3))
        have = 0
        while have < n:
            todo = n - have
            k = max(32, int(todo * envelope * 1.2))
            props = uniform_sphere(rng, k)
            s = sign_pm(props @ a) * sign_pm(props @ b)
            g = np.where(s > 0, g_plus, g_minus)
            keep = rng.random(k) * envelope < g
            took = min(int(keep.sum()), todo)
            out[have : have + took] = props[keep][:took]
            have += took
        return {"vec": out}

    def density_arrays(self, arrays: dict, ctx: ModelContext) -> np.ndarray:
        return self.marginal_values(np.asarray(arrays["vec"], dtype=float), ctx)

    def outcome_index_arrays(self, arrays: dict, ctx: ModelContext) -> np.ndarray:
        vec = np.asarray(arrays["vec"], dtype=float)
        a = ctx.measurement.alice.as_array()
        b = ctx.measurement.bob.as_array()
        x = sign_pm(vec @ a)  # A = sign(lam1 . a)
        y = sign_pm(-vec @ b)  # B = sign(lam2 . b), lam2 = -lam1
        return (x < 0).astype(int) * 2 + (y < 0).astype(int)

    def point_from_arrays(self, arrays: dict, i: int, ctx: ModelContext) -> AntipodalPair:
        return AntipodalPair.from_first(BlochVector.from_array(arrays["vec"][i]))

    def arrays_from_point(self, lam, ctx: ModelContext) -> dict:
        if not isinstance(lam, AntipodalPair):
            raise TypeError(f"expected AntipodalPair, got {type(lam).__name__}")
        return {"vec": lam.first.as_array()[None, :]}
