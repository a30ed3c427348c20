"""Smooth energy cutoff splitting kernels into low and high momenta."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from radscat.errors import DomainError


def _sigma(u: np.ndarray) -> np.ndarray:
    """exp(-1/u) for u > 0, else 0."""
    out = np.zeros_like(u)
    positive = u > 0
    out[positive] = np.exp(-1.0 / u[positive])
    return out


def smooth_step(u) -> np.ndarray:
    """C^inf step: 0 for u <= 0, 1 for u >= 1."""
    u = np.asarray(u, dtype=float)
    rise = _sigma(u)
    return rise / (rise + _sigma(1.0 - u))


@dataclass(frozen=True)
class CutoffSpec:
    """chi = 0 on |k| < 2 k0 and chi = 1 on |k| > 3 k0."""

    k0: float

    def __post_init__(self):
        if not self.k0 > 0:
            raise DomainError(f"The cutoff needs k0 > 0, got {self.k0}")

    @property
    def lower(self) -> float:
        return 2 * self.k0

    @property
    def upper(self) -> float:
        return 3 * self.k0

    def chi(self, k) -> np.ndarray:
        """High-pass weight."""
        return smooth_step((np.abs(np.asarray(k, dtype=float)) - self.lower) / self.k0)

    def lowpass(self, k) -> np.ndarray:
        """1 - chi."""
        return 1.0 - self.chi(k)
