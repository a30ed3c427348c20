"""Scattering data on a momentum grid."""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Optional

import numpy as np
from joblib import Parallel, delayed

from radscat.errors import DomainError
from radscat.logger import get_logger
from radscat.problem import ProblemSpec
from radscat.scattering.bound_states import BoundState, bound_states
from radscat.scattering.jost import jost_prefactor
from radscat.scattering.resonance import ResonanceReport, resonance_status
from radscat.solutions import second_normalization
from radscat.tabular.scattering import ScatteringTable


def _scattering_point(problem: ProblemSpec, k: float) -> tuple[complex, complex]:
    """(F(k), m(k^2)) from a single regular solve."""
    wronskian, jost_F, m_free = second_normalization(problem, k)
    return complex(jost_F), complex(m_free / (jost_F * wronskian))


@dataclass(frozen=True)
class ScatteringData:
    """f, F, g and m on a grid of k > 0 with the bound states and k = 0 status.

    Values at -k follow from f(-k) = f(k)* and are not stored.
    """

    l: float
    potential_id: str
    k_grid: np.ndarray
    F_of_k: np.ndarray
    m_of_k: np.ndarray
    bound_states: list[BoundState] = field(default_factory=list)
    resonance: Optional[ResonanceReport] = None

    @property
    def f_of_k(self) -> np.ndarray:
        return np.array(
            [jost_prefactor(self.l, k) for k in self.k_grid], dtype=complex
        ) * self.F_of_k

    @property
    def g_of_k(self) -> np.ndarray:
        """g(k) = -m(k^2) f(k)."""
        return -self.m_of_k * self.f_of_k

    def to_table(self) -> ScatteringTable:
        f_of_k = self.f_of_k
        records = [
            {
                "k": float(k),
                "re_f": float(f.real),
                "im_f": float(f.imag),
                "re_F": float(F.real),
                "im_F": float(F.imag),
                "abs_F": float(abs(F)),
                "im_m": float(m.imag),
            }
            for k, f, F, m in zip(self.k_grid, f_of_k, self.F_of_k, self.m_of_k)
        ]
        return ScatteringTable.from_records(records)

    def to_dict(self) -> dict:
        """Bound states and resonance status for the JSON report."""
        return {
            "potential_id": self.potential_id,
            "l": self.l,
            "bound_states": [
                {
                    "kappa": state.kappa,
                    "lambda": state.energy,
                    "gamma": state.gamma,
                    "gamma_residue": state.gamma_residue,
                }
                for state in self.bound_states
            ],
            "resonance": None if self.resonance is None else self.resonance.to_dict(),
        }


def compute_scattering_data(
    problem: ProblemSpec,
    k_grid,
    n_jobs: int = 1,
    with_bound_states: bool = True,
    logger: Optional[logging.Logger] = None,
) -> ScatteringData:
    """Evaluate F and m on ``k_grid`` in parallel, then bound states and F(0)."""
    if logger is None:
        logger = get_logger("compute_scattering_data")
    k_grid = np.asarray(k_grid, dtype=float)
    if np.any(k_grid <= 0):
        raise DomainError("Scattering data are tabulated for k > 0")
    if np.any(np.diff(k_grid) <= 0):
        raise DomainError("The k grid must be strictly increasing")

    logger.info(f"Computing scattering data of {problem} at {len(k_grid)} points")
    results = Parallel(n_jobs=n_jobs)(
        delayed(_scattering_point)(problem, k) for k in k_grid
    )
    jost_F = np.array([result[0] for result in results], dtype=complex)
    weyl = np.array([result[1] for result in results], dtype=complex)

    states = []
    if with_bound_states:
        states = bound_states(problem, n_jobs=n_jobs, logger=logger)
    resonance = resonance_status(problem, logger=logger)
    logger.info(
        f"{len(states)} bound state(s), zero-energy status {resonance.status.value}"
    )
    return ScatteringData(
        l=problem.l,
        potential_id=problem.q.id,
        k_grid=k_grid,
        F_of_k=jost_F,
        m_of_k=weyl,
        bound_states=states,
        resonance=resonance,
    )
