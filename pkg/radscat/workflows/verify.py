"""Workflow for the bound-check suite."""

from __future__ import annotations

from functools import cached_property

from radscat.config.main import Command
from radscat.errors import ConfigError, HypothesisViolationError
from radscat.problem import ProblemSpec
from radscat.verify import CHECK_IDS, run_suite
from radscat.workflows.base import BaseRunWorkflow

FNAME_VERIFY_REPORT = "verify.json"
FNAME_CHECKS_TABLE = "checks.csv"
FNAME_TRACEABILITY = "traceability.csv"


class VerifyWorkflow(BaseRunWorkflow):
    """Run the checks on every (potential, l) column of the matrix.

    Problems that violate the integrability hypothesis are reported as
    skipped; the workflow then raises after writing the reports.
    """

    command = Command.VERIFY
    require_hypothesis = False

    @cached_property
    def problems(self) -> list[ProblemSpec]:
        """Problems spanned by VERIFY.POTENTIALS and VERIFY.LS."""
        settings = self.config.VERIFY
        potentials = settings.POTENTIALS or [self.config.POTENTIAL]
        ls = settings.LS or [self.config.L]
        return [
            ProblemSpec(l, potential, self.config.SOLVER)
            for potential in potentials
            for l in ls
        ]

    def run_setup(self, **kwargs):
        """Check the requested ids before running anything."""
        super().run_setup(**kwargs)
        lemma_ids = self.config.VERIFY.LEMMA_IDS or []
        unknown = [lemma_id for lemma_id in lemma_ids if lemma_id not in CHECK_IDS]
        if unknown:
            raise ConfigError(
                f"Unknown check ids {unknown}",
                details={"unknown": unknown, "available": list(CHECK_IDS)},
            )
        self.logger.info(f"Verifying {len(self.problems)} problem(s)")

    def run_main(self, **kwargs):
        """Run the suite and write the reports and the traceability matrix."""
        result = run_suite(
            self.problems,
            settings=self.config.VERIFY,
            seed=self.config.SEED,
            n_jobs=self.config.N_JOBS,
            logger=self.logger,
        )
        matrix = result.matrix.rename_axis("lemma_id").reset_index()
        self.save_json_file(result.to_dict(), FNAME_VERIFY_REPORT)
        self.save_tabular_file(result.table, FNAME_CHECKS_TABLE)
        self.save_csv_file(matrix, FNAME_TRACEABILITY)

        if result.skipped:
            skipped = sorted({(r.potential_id, r.l) for r in result.skipped})
            raise HypothesisViolationError(
                "The suite was skipped for problems violating the"
                " integrability hypothesis",
                details={
                    "skipped": [{"potential": p, "l": l} for p, l in skipped],
                    "reason": result.skipped[0].reason,
                },
            )
        if not result.passed:
            self.logger.warning("Some checks did not pass, see the report")
