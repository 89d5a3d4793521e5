"""Shared numeric conventions: tolerances and total step/sign functions.

Every structural validity check (norms, hermiticity, POVM completeness) and
every closed-form identity comparison in the package reads its tolerance from
the single record below, so the property tests have one tuning point.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class Tolerances:
    structural: float = 1e-9  # validity of constructed objects
    arithmetic: float = 1e-12  # closed-form arithmetic identities
    support: float = 1e-12  # density threshold separating structural zeros from dust


TOL = Tolerances()


def step(x):
    """Heaviside step with the fixed convention step(0) = 1 (elementwise)."""
    return np.where(np.asarray(x) >= 0.0, 1.0, 0.0)


def sign_pm(x):
    """Sign in {-1, +1} with the fixed convention sign_pm(0) = +1 (elementwise)."""
    return np.where(np.asarray(x) >= 0.0, 1, -1)
