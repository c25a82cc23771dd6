"""Real-valued sensor patterns b_m(gamma).

A pattern returns an (M, K) gain matrix for K direction parameters; the same
shape is returned by its derivative with respect to gamma.
"""

from dataclasses import dataclass
from typing import Protocol

import numpy as np


class SensorPattern(Protocol):
    """Per-sensor gain as a function of the direction sine gamma."""

    name: str

    def gain(self, gamma: np.ndarray, n_sensors: int) -> np.ndarray:
        """Return b_m(gamma_k) as an (M, K) real matrix."""
        ...

    def gain_derivative(self, gamma: np.ndarray, n_sensors: int) -> np.ndarray:
        """Return b'_m(gamma_k) as an (M, K) real matrix."""
        ...


@dataclass(frozen=True)
class IsotropicPattern:
    """b_m(gamma) = 1 for every sensor."""

    name: str = "isotropic"

    def gain(self, gamma: np.ndarray, n_sensors: int) -> np.ndarray:
        """Return a matrix of ones."""
        return np.ones((n_sensors, np.size(gamma)))

    def gain_derivative(self, gamma: np.ndarray, n_sensors: int) -> np.ndarray:
        """Return a matrix of zeros."""
        return np.zeros((n_sensors, np.size(gamma)))


@dataclass(frozen=True)
class CardioidPattern:
    """b_m(gamma) = (1 + gamma) / 2, a null at endfire gamma = -1."""

    name: str = "cardioid"

    def gain(self, gamma: np.ndarray, n_sensors: int) -> np.ndarray:
        """Return (1 + gamma) / 2 repeated over sensors."""
        row = 0.5 * (1.0 + np.atleast_1d(np.asarray(gamma, dtype=float)))
        return np.tile(row, (n_sensors, 1))

    def gain_derivative(self, gamma: np.ndarray, n_sensors: int) -> np.ndarray:
        """Return the constant slope 1/2."""
        return np.full((n_sensors, np.size(gamma)), 0.5)


PATTERNS: dict[str, SensorPattern] = {
    "isotropic": IsotropicPattern(),
    "cardioid": CardioidPattern(),
}


def pattern_from_name(name: str) -> SensorPattern:
    """Look up a built-in pattern by name."""
    try:
        return PATTERNS[str(name).strip().lower()]
    except KeyError:
        raise ValueError(f"Unknown sensor pattern: {name!r} (expected one of {', '.join(PATTERNS)})") from None
