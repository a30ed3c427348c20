"""Spectral measure: density d lambda + sum_n gamma_n delta(lambda - lambda_n)."""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Optional

import numpy as np
from joblib import Parallel, delayed
from scipy.integrate import cumulative_trapezoid

from radscat.errors import DomainError
from radscat.logger import get_logger
from radscat.problem import ProblemSpec
from radscat.scattering.bound_states import BoundState, bound_states
from radscat.scattering.jost import normalized_jost_F


def free_density(l: float, lam) -> np.ndarray:
    """rho_l'(lambda) = lambda^(l+1/2) / pi."""
    return np.asarray(lam, dtype=float) ** (l + 0.5) / np.pi


def free_cumulative(l: float, lam) -> np.ndarray:
    """rho_l(lambda) = lambda^(l+3/2) / (pi (l+3/2))."""
    return np.asarray(lam, dtype=float) ** (l + 1.5) / (np.pi * (l + 1.5))


def density_from_F(l: float, lam, jost_F) -> np.ndarray:
    """sqrt(lambda) / (pi |f(sqrt(lambda))|^2) with f = f_l F."""
    return free_density(l, lam) / np.abs(np.asarray(jost_F)) ** 2


@dataclass
class SpectralMeasure:
    """Absolutely continuous density on a lambda grid plus the discrete part."""

    l: float
    lambdas: np.ndarray
    density: np.ndarray
    jost_F: np.ndarray
    discrete: list[BoundState] = field(default_factory=list)

    @property
    def asymptotic_ratio(self) -> np.ndarray:
        """density / rho_l', which tends to 1 as lambda -> inf."""
        return self.density / free_density(self.l, self.lambdas)

    def cumulative(self) -> np.ndarray:
        """rho(lambda) on the grid: discrete mass plus int_0^lambda density.

        The density vanishes at lambda = 0 away from resonances, which is used
        as the left end of the trapezoidal rule.
        """
        lam = np.concatenate([[0.0], self.lambdas])
        dens = np.concatenate([[0.0], self.density])
        continuous = cumulative_trapezoid(dens, lam, initial=0.0)[1:]
        return continuous + sum(state.gamma for state in self.discrete)

    def to_dict(self) -> dict:
        return {
            "l": self.l,
            "discrete": [
                {"lambda": state.energy, "kappa": state.kappa, "gamma": state.gamma}
                for state in self.discrete
            ],
        }


def spectral_measure(
    problem: ProblemSpec,
    lambda_grid,
    n_jobs: int = 1,
    with_discrete: bool = True,
    logger: Optional[logging.Logger] = None,
) -> SpectralMeasure:
    """Density lambda^(l+1/2) / (pi |F(sqrt(lambda))|^2) and bound states."""
    if logger is None:
        logger = get_logger("spectral_measure")
    lambdas = np.asarray(lambda_grid, dtype=float)
    if np.any(lambdas <= 0):
        raise DomainError("The continuous density is evaluated at lambda > 0")
    jost_F = np.asarray(
        Parallel(n_jobs=n_jobs)(
            delayed(normalized_jost_F)(problem, np.sqrt(lam)) for lam in lambdas
        ),
        dtype=complex,
    )
    discrete = []
    if with_discrete:
        discrete = bound_states(problem, n_jobs=n_jobs, logger=logger)
    logger.info(
        f"Spectral measure of {problem}: {len(lambdas)} grid points,"
        f" {len(discrete)} bound states"
    )
    return SpectralMeasure(
        l=problem.l,
        lambdas=lambdas,
        density=density_from_F(problem.l, lambdas, jost_F),
        jost_F=jost_F,
        discrete=discrete,
    )
