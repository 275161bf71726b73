"""Dimensionless walk configurations.

theta parametrizes the family of walks (theta=0 is the conventional Dirac
walk); mass_dt is m*c^2*dt.  The derivations assume theta in (-pi/2, pi/2);
`extended_theta` widens the accepted range to (-pi, pi) for figure
reproduction runs (the paper's figure captions quote theta=3pi/4), with
energy-bound assertions only made for theta in [0, pi/2).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np


def _validate(theta: float, mass_dt: float, extended: bool) -> None:
    limit = np.pi if extended else np.pi / 2
    if not np.isfinite(theta) or not (-limit < theta < limit):
        kind = "(-pi, pi)" if extended else "(-pi/2, pi/2)"
        raise ValueError(f"theta={theta} outside {kind}")
    if not np.isfinite(mass_dt) or not (0.0 <= mass_dt < np.pi):
        raise ValueError(f"mass_dt={mass_dt} outside [0, pi)")


@dataclass(frozen=True)
class Walk1DParams:
    theta: float
    mass_dt: float = 0.0
    extended_theta: bool = False

    def __post_init__(self) -> None:
        _validate(self.theta, self.mass_dt, self.extended_theta)


@dataclass(frozen=True)
class Walk3DParams:
    theta: float
    mass_dt: float = 0.0
    extended_theta: bool = False

    def __post_init__(self) -> None:
        _validate(self.theta, self.mass_dt, self.extended_theta)
