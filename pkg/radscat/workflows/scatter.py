"""Workflow for scattering data."""

from __future__ import annotations

from radscat.config.main import Command
from radscat.scattering import compute_scattering_data
from radscat.workflows.base import BaseRunWorkflow

FNAME_SCATTERING_TABLE = "scattering.csv"
FNAME_SCATTERING_REPORT = "scattering.json"


class ScatterWorkflow(BaseRunWorkflow):
    """F, f and m on K_GRID, plus bound states and the zero-energy status."""

    command = Command.SCATTER

    def run_main(self, **kwargs):
        """Compute the scattering data and write the table and the report."""
        data = compute_scattering_data(
            self.problem,
            self.config.grid("K_GRID"),
            n_jobs=self.config.N_JOBS,
            logger=self.logger,
        )
        self.save_tabular_file(data.to_table(), FNAME_SCATTERING_TABLE)
        self.save_json_file(data.to_dict(), FNAME_SCATTERING_REPORT)
