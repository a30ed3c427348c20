"""Workflow for the spectral measure."""

from __future__ import annotations

from radscat.config.main import Command
from radscat.scattering import spectral_measure
from radscat.tabular.scattering import SpectralTable
from radscat.workflows.base import BaseRunWorkflow

FNAME_SPECTRAL_TABLE = "spectral.csv"
FNAME_SPECTRAL_REPORT = "spectral.json"


class SpectralWorkflow(BaseRunWorkflow):
    """Density and spectral function on LAMBDA_GRID, plus the point masses."""

    command = Command.SPECTRAL

    def run_main(self, **kwargs):
        """Compute the spectral measure and write the table and the report."""
        measure = spectral_measure(
            self.problem,
            self.config.grid("LAMBDA_GRID"),
            n_jobs=self.config.N_JOBS,
            logger=self.logger,
        )
        records = [
            {"lambda": float(lam), "density": float(rho), "cumulative": float(cum)}
            for lam, rho, cum in zip(
                measure.lambdas, measure.density, measure.cumulative()
            )
        ]
        self.save_tabular_file(
            SpectralTable.from_records(records), FNAME_SPECTRAL_TABLE
        )
        self.save_json_file(measure.to_dict(), FNAME_SPECTRAL_REPORT)
