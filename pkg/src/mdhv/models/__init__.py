"""Measurement-dependent hidden-variable models and the shared interface."""

from __future__ import annotations

from .base import (
    SINGLET,
    AntipodalPair,
    AxisPair,
    DiscreteIndex,
    HiddenVariableModel,
    IntervalPoint,
    LabeledSphere,
    ModelContext,
    OnticKind,
    OnticPoint,
    ReferenceMeasure,
    SettingsOutcomePair,
    SimulationReport,
    SingletFlag,
    SpherePoint,
    mixture_density,
    run_experiment,
    stream,
)
from .bellmermin import BellMermin
from .brans import BransSinglet, singlet_context
from .gbrans import GeneralizedBrans
from .hall import HallSinglet
from .interval import IntervalModel
from .ks import KochenSpecker1, KochenSpecker2

MODEL_REGISTRY: dict[str, type[HiddenVariableModel]] = {
    "brans": BransSinglet,
    "gbrans": GeneralizedBrans,
    "interval": IntervalModel,
    "ks1": KochenSpecker1,
    "ks2": KochenSpecker2,
    "hall": HallSinglet,
    "bellmermin": BellMermin,
}


def create_model(name: str) -> HiddenVariableModel:
    try:
        return MODEL_REGISTRY[name]()
    except KeyError:
        raise KeyError(f"unknown model {name!r}; registered: {sorted(MODEL_REGISTRY)}") from None


__all__ = [
    "SINGLET",
    "AntipodalPair",
    "AxisPair",
    "BellMermin",
    "BransSinglet",
    "DiscreteIndex",
    "GeneralizedBrans",
    "HallSinglet",
    "HiddenVariableModel",
    "IntervalModel",
    "IntervalPoint",
    "KochenSpecker1",
    "KochenSpecker2",
    "LabeledSphere",
    "MODEL_REGISTRY",
    "ModelContext",
    "OnticKind",
    "OnticPoint",
    "ReferenceMeasure",
    "SettingsOutcomePair",
    "SimulationReport",
    "SingletFlag",
    "SpherePoint",
    "create_model",
    "mixture_density",
    "run_experiment",
    "singlet_context",
    "stream",
]
