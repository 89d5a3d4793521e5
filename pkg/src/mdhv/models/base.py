"""Hidden-variable model interface: ontic points, contexts, sampling engine.

A model is conditioned on a (preparation, measurement) pair and exposes four
point operations: draw an ontic value, evaluate the ensemble density at a
value (w.r.t. the model's declared reference measure), give the response
distribution over outcome labels at a value, and test support membership.
Vectorized array variants of the same operations back every Monte Carlo loop;
the point API is a thin n=1 wrapper around them.

Randomness contract: streams are counter-based (Philox) and derived from
(seed, chunk-index), so shot ranges can be partitioned across workers and the
merged counts are bit-identical regardless of execution order.
"""

from __future__ import annotations

import json
from abc import ABC, abstractmethod
from dataclasses import dataclass
from enum import Enum
from typing import Union

import numpy as np

from ..constants import TOL
from ..quantum import BlochVector, DensityMatrix, Povm, StateVector

__all__ = [
    "DiscreteIndex",
    "IntervalPoint",
    "SpherePoint",
    "LabeledSphere",
    "AntipodalPair",
    "SettingsOutcomePair",
    "OnticPoint",
    "SingletFlag",
    "SINGLET",
    "AxisPair",
    "ModelContext",
    "ReferenceMeasure",
    "OnticKind",
    "HiddenVariableModel",
    "SimulationReport",
    "run_experiment",
    "mixture_density",
    "stream",
]


# ---------------------------------------------------------------------------
# Ontic points
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class DiscreteIndex:
    """Ontic value indexing one measurement outcome."""

    j: int


@dataclass(frozen=True)
class IntervalPoint:
    """Ontic value on a bounded interval of the real line."""

    x: float


@dataclass(frozen=True)
class SpherePoint:
    """Ontic unit vector on the Bloch sphere."""

    vec: BlochVector


@dataclass(frozen=True)
class LabeledSphere:
    """Discrete outcome tag paired with an ontic unit vector."""

    label: str
    vec: BlochVector


@dataclass(frozen=True)
class AntipodalPair:
    """Two ontic unit vectors constrained to second = -first (enforced exactly)."""

    first: BlochVector
    second: BlochVector

    def __post_init__(self):
        neg = -self.first
        if (self.second.x, self.second.y, self.second.z) != (neg.x, neg.y, neg.z):
            raise ValueError("AntipodalPair requires second == -first exactly")

    @classmethod
    def from_first(cls, first: BlochVector) -> "AntipodalPair":
        return cls(first, -first)


@dataclass(frozen=True)
class SettingsOutcomePair:
    """Per-particle outcome tags plus the setting axes they were conditioned on."""

    i: int
    j: int
    alice_axis: BlochVector
    bob_axis: BlochVector

    def __post_init__(self):
        if self.i not in (+1, -1) or self.j not in (+1, -1):
            raise ValueError("outcome tags must be +1 or -1")


OnticPoint = Union[
    DiscreteIndex, IntervalPoint, SpherePoint, LabeledSphere, AntipodalPair, SettingsOutcomePair
]


# ---------------------------------------------------------------------------
# Contexts
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SingletFlag:
    """Marker preparation: the two-qubit singlet."""


SINGLET = SingletFlag()


@dataclass(frozen=True)
class AxisPair:
    """Spin measurement axes for the two parties of a bipartite context."""

    alice: BlochVector
    bob: BlochVector


@dataclass(frozen=True, eq=False)
class ModelContext:
    """The conditioning pair (preparation, measurement) of an MD density."""

    preparation: Union[StateVector, DensityMatrix, SingletFlag]
    measurement: Union[Povm, AxisPair, BlochVector]


class ReferenceMeasure(str, Enum):
    COUNTING = "counting"
    LEBESGUE_INTERVAL = "lebesgue-interval"
    SPHERE_SURFACE = "sphere-surface"
    LABELED_SPHERE = "counting*sphere-surface"


class OnticKind(str, Enum):
    DISCRETE = "discrete"
    INTERVAL = "interval"
    SPHERE = "sphere"
    LABELED_SPHERE = "labeled-sphere"
    ANTIPODAL = "antipodal-pair"
    SETTINGS_PAIR = "settings-outcome-pair"


def stream(seed: int, index: int = 0) -> np.random.Generator:
    """Independent counter-based stream keyed by (seed, index)."""
    return np.random.Generator(np.random.Philox(np.random.SeedSequence((int(seed), int(index)))))


# ---------------------------------------------------------------------------
# Model interface
# ---------------------------------------------------------------------------


class HiddenVariableModel(ABC):
    """Behavioral contract shared by all models in the registry.

    Subclasses declare `name`, `reference_measure`, `ontic_kind`, and
    `is_deterministic`, and implement the array-level operations.  Densities
    are always stated with respect to the declared reference measure.
    """

    name: str = ""
    reference_measure: ReferenceMeasure
    ontic_kind: OnticKind
    is_deterministic: bool = True

    # -- context handling ---------------------------------------------------

    @abstractmethod
    def validate_context(self, ctx: ModelContext) -> None:
        """Raise TypeError/ValueError if the context is malformed for this model."""

    @abstractmethod
    def outcome_labels(self, ctx: ModelContext) -> tuple[str, ...]:
        """Outcome labels, in a fixed order shared with born_reference."""

    @abstractmethod
    def born_reference(self, ctx: ModelContext) -> dict[str, float]:
        """Exact quantum outcome distribution for the context."""

    @abstractmethod
    def random_context(self, rng: np.random.Generator, dim: int = 2) -> ModelContext:
        """A random context of the shape this model accepts (dim where meaningful)."""

    # -- array-level engine ---------------------------------------------------

    @abstractmethod
    def sample_arrays(self, ctx: ModelContext, n: int, rng: np.random.Generator) -> dict:
        """Draw n ontic values; returns model-specific named arrays."""

    @abstractmethod
    def density_arrays(self, arrays: dict, ctx: ModelContext) -> np.ndarray:
        """Ensemble density at each ontic value, w.r.t. the reference measure."""

    @abstractmethod
    def outcome_index_arrays(self, arrays: dict, ctx: ModelContext) -> np.ndarray:
        """Index into outcome_labels of the (deterministic) response at each value."""

    @abstractmethod
    def point_from_arrays(self, arrays: dict, i: int, ctx: ModelContext) -> OnticPoint:
        """Materialize sample i as an OnticPoint."""

    @abstractmethod
    def arrays_from_point(self, lam: OnticPoint, ctx: ModelContext) -> dict:
        """Encode a single OnticPoint as length-1 arrays (TypeError on wrong variant)."""

    # -- point API (wrappers) -------------------------------------------------

    def sample(self, ctx: ModelContext, rng: np.random.Generator) -> OnticPoint:
        self.validate_context(ctx)
        return self.point_from_arrays(self.sample_arrays(ctx, 1, rng), 0, ctx)

    def density(self, lam: OnticPoint, ctx: ModelContext) -> float:
        return float(self.density_arrays(self.arrays_from_point(lam, ctx), ctx)[0])

    def respond(self, lam: OnticPoint, ctx: ModelContext) -> dict[str, float]:
        """Response distribution over outcome labels (point mass when deterministic)."""
        labels = self.outcome_labels(ctx)
        k = int(self.outcome_index_arrays(self.arrays_from_point(lam, ctx), ctx)[0])
        return {label: (1.0 if i == k else 0.0) for i, label in enumerate(labels)}

    def respond_probability_arrays(
        self, arrays: dict, ctx: ModelContext, label_index: int
    ) -> np.ndarray:
        """Vectorized response probability of one label; exact 0/1 when deterministic."""
        return (self.outcome_index_arrays(arrays, ctx) == label_index).astype(float)

    def in_support(self, lam: OnticPoint, ctx: ModelContext) -> bool:
        """Whether the density at lam exceeds the structural-zero threshold."""
        return self.density(lam, ctx) > TOL.support

    def in_support_arrays(self, arrays: dict, ctx: ModelContext) -> np.ndarray:
        return self.density_arrays(arrays, ctx) > TOL.support

    def sample_outcomes(self, ctx: ModelContext, n: int, rng: np.random.Generator) -> np.ndarray:
        arrays = self.sample_arrays(ctx, n, rng)
        return self.outcome_index_arrays(arrays, ctx)

    def support_mass_exact(self, ctx_from: ModelContext, ctx_support: ModelContext) -> float | None:
        """Closed-form mass of p(.|ctx_from) inside the support of ctx_support, when available."""
        return None

    def __repr__(self):
        return f"{type(self).__name__}(name={self.name!r})"


# ---------------------------------------------------------------------------
# Experiments
# ---------------------------------------------------------------------------

_CHUNK = 1 << 16


@dataclass(frozen=True)
class SimulationReport:
    """Outcome counts of a seeded run together with the quantum reference."""

    shots: int
    seed: int
    counts: dict[str, int]
    estimates: dict[str, float]
    stderr: dict[str, float]
    born_reference: dict[str, float]

    def to_json(self) -> str:
        return json.dumps(
            {
                "shots": self.shots,
                "seed": self.seed,
                "counts": self.counts,
                "estimates": self.estimates,
                "stderr": self.stderr,
                "born_reference": self.born_reference,
            }
        )


def _chunk_sizes(shots: int) -> list[int]:
    full, rest = divmod(shots, _CHUNK)
    return [_CHUNK] * full + ([rest] if rest else [])


def run_experiment(
    model: HiddenVariableModel,
    ctx: ModelContext,
    shots: int,
    seed: int,
    threads: int = 1,
) -> SimulationReport:
    """Sample `shots` outcomes and compare against the Born reference.

    Deterministic given (model, ctx, shots, seed): shots are split into fixed
    chunks, chunk c drawing from stream(seed, c), and counts merge by
    addition, so thread count cannot change the report.
    """
    model.validate_context(ctx)
    if shots < 1:
        raise ValueError("shots must be >= 1")
    labels = model.outcome_labels(ctx)
    sizes = _chunk_sizes(shots)

    def one_chunk(c: int) -> np.ndarray:
        idx = model.sample_outcomes(ctx, sizes[c], stream(seed, c))
        return np.bincount(idx, minlength=len(labels))

    if threads > 1 and len(sizes) > 1:
        from concurrent.futures import ThreadPoolExecutor

        with ThreadPoolExecutor(max_workers=threads) as pool:
            counts = sum(pool.map(one_chunk, range(len(sizes))))
    else:
        counts = sum(one_chunk(c) for c in range(len(sizes)))

    estimates = counts / shots
    stderr = np.sqrt(estimates * (1.0 - estimates) / shots)
    return SimulationReport(
        shots=shots,
        seed=seed,
        counts={label: int(counts[k]) for k, label in enumerate(labels)},
        estimates={label: float(estimates[k]) for k, label in enumerate(labels)},
        stderr={label: float(stderr[k]) for k, label in enumerate(labels)},
        born_reference=model.born_reference(ctx),
    )


def mixture_density(
    model: HiddenVariableModel,
    mixture: list[tuple[float, StateVector]],
    measurement,
    lam: OnticPoint,
) -> float:
    """Density of a mixed preparation at lam: the convex combination of the
    model's pure-state densities, sum_i c_i p(lam | a_i, M)."""
    if not mixture:
        raise ValueError("mixture needs at least one component")
    weights = np.array([w for w, _ in mixture], dtype=float)
    if weights.min() < -TOL.structural:
        raise ValueError("mixture weights must be nonnegative")
    if abs(weights.sum() - 1.0) > TOL.structural:
        raise ValueError("mixture weights must sum to 1")
    dims = {s.dim for _, s in mixture}
    if len(dims) != 1:
        raise ValueError("mixture components must share one dimension")
    return float(
        sum(w * model.density(lam, ModelContext(state, measurement)) for w, state in mixture)
    )
