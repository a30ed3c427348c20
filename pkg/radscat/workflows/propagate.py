"""Workflow for propagator kernels."""

from __future__ import annotations

import pandas as pd

from radscat.config.main import Command
from radscat.propagator import kernel_series
from radscat.tabular.kernel import KernelTable
from radscat.workflows.base import BaseRunWorkflow

FNAME_KERNEL_TABLE = "kernel.csv"
FNAME_KERNEL_REPORT = "kernel.json"


class PropagateWorkflow(BaseRunWorkflow):
    """Kernel of the route KERNEL.ROUTE on T_GRID x X_GRID x Y_GRID."""

    command = Command.PROPAGATE

    def run_main(self, **kwargs):
        """Compute the kernels at all times and write one table and a report."""
        route = self.config.KERNEL.ROUTE
        grids = kernel_series(
            self.problem,
            route,
            self.config.grid("T_GRID"),
            self.config.grid("X_GRID"),
            self.config.grid("Y_GRID"),
            settings=self.config.KERNEL,
            n_jobs=self.config.N_JOBS,
            logger=self.logger,
        )
        table = KernelTable(
            pd.concat([grid.to_table() for grid in grids], ignore_index=True)
        )
        cutoff = grids[0].cutoff
        report = {
            "potential_id": self.problem.q.id,
            "l": self.problem.l,
            "route": route,
            "k0": None if cutoff is None else cutoff.k0,
            "t": [grid.t for grid in grids],
            "error_bound": [grid.error_bound for grid in grids],
            "symmetry_defect": [grid.symmetry_defect() for grid in grids],
            "sup_abs_K": [grid.sup() for grid in grids],
        }
        self.save_tabular_file(table, FNAME_KERNEL_TABLE)
        self.save_json_file(report, FNAME_KERNEL_REPORT)
