"""Workflow for tabulating regular and Jost solutions."""

from __future__ import annotations

import numpy as np
from joblib import Parallel, delayed

from radscat.config.main import Command
from radscat.errors import DomainError
from radscat.problem import ProblemSpec
from radscat.solutions import solve_jost, solve_regular
from radscat.tabular.solutions import SolutionTable
from radscat.workflows.base import BaseRunWorkflow

FNAME_SOLUTIONS = "solutions.csv"


def _solution_records(problem: ProblemSpec, k: float, x: np.ndarray) -> list[dict]:
    regular = solve_regular(problem, k, x)
    jost = solve_jost(problem, k, x)
    return [
        {
            "k": float(k),
            "x": float(xi),
            "re_phi": float(phi.real),
            "im_phi": float(phi.imag),
            "re_phi_dx": float(phi_dx.real),
            "im_phi_dx": float(phi_dx.imag),
            "re_f": float(f.real),
            "im_f": float(f.imag),
            "re_f_dx": float(f_dx.real),
            "im_f_dx": float(f_dx.imag),
        }
        for xi, phi, phi_dx, f, f_dx in zip(
            x, regular.value, regular.dx, jost.value, jost.dx
        )
    ]


class SolveWorkflow(BaseRunWorkflow):
    """phi(k^2, x) and f(k, x) on K_GRID x X_GRID."""

    command = Command.SOLVE

    def run_main(self, **kwargs):
        """Solve at every k in parallel and write one table."""
        k_grid = self.config.grid("K_GRID")
        x_grid = self.config.grid("X_GRID")
        if np.any(k_grid <= 0):
            raise DomainError("The solve command tabulates k > 0")
        self.logger.info(
            f"Solving {self.problem} at {len(k_grid)} momenta"
            f" and {len(x_grid)} positions"
        )
        results = Parallel(n_jobs=self.config.N_JOBS)(
            delayed(_solution_records)(self.problem, k, x_grid) for k in k_grid
        )
        records = [record for result in results for record in result]
        self.save_tabular_file(SolutionTable.from_records(records), FNAME_SOLUTIONS)
