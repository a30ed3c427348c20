"""Workflow for the dispersive-decay certificate."""

from __future__ import annotations

from radscat.config.main import Command
from radscat.propagator import decay_certificate
from radscat.workflows.base import BaseRunWorkflow

FNAME_DECAY_TABLE = "decay.csv"
FNAME_DECAY_REPORT = "decay.json"


class CertifyWorkflow(BaseRunWorkflow):
    """Fit the decay of sup |K(t, x, y)| over T_GRID."""

    command = Command.CERTIFY

    def run_main(self, **kwargs):
        """Compute the certificate and write the table and the report."""
        report = decay_certificate(
            self.problem,
            self.config.grid("T_GRID"),
            self.config.grid("X_GRID"),
            self.config.grid("Y_GRID"),
            settings=self.config.KERNEL,
            n_jobs=self.config.N_JOBS,
            logger=self.logger,
        )
        if not report.passed:
            self.logger.warning(
                f"The decay certificate of {self.problem} did not pass"
                f" (exponent {report.exponent:.4f}, spread {report.spread:.3f})"
            )
        data = {"potential_id": self.problem.q.id, "l": self.problem.l}
        data.update(report.to_dict())
        self.save_tabular_file(report.to_table(), FNAME_DECAY_TABLE)
        self.save_json_file(data, FNAME_DECAY_REPORT)
