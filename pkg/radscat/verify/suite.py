"""Run the checks over one or more problems and build the traceability matrix."""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Iterable, Optional

import pandas as pd
from joblib import Parallel, delayed

from radscat.config.main import VerifySettings
from radscat.errors import HypothesisViolationError
from radscat.logger import get_logger
from radscat.problem import ProblemSpec
from radscat.tabular.checks import (
    STATUS_FAIL,
    STATUS_INCONCLUSIVE,
    STATUS_SKIPPED,
    CheckTable,
)
from radscat.verify.checks import (
    CHECK_IDS,
    CHECKS,
    BoundCheckReport,
    check_bound,
    skipped_report,
)


@dataclass
class SuiteResult:
    """Reports of every (problem, check) pair, in problem then check order."""

    reports: list[BoundCheckReport]
    lemma_ids: list[str]

    @property
    def table(self) -> CheckTable:
        return CheckTable.from_records([report.to_record() for report in self.reports])

    @property
    def matrix(self) -> pd.DataFrame:
        """Statuses with lemma ids as rows and (potential, l) as columns."""
        return self.table.traceability_matrix(self.lemma_ids)

    @property
    def passed(self) -> bool:
        return self.table.all_passed()

    @property
    def skipped(self) -> list[BoundCheckReport]:
        return [report for report in self.reports if report.status == STATUS_SKIPPED]

    def to_dict(self) -> dict:
        matrix = self.matrix
        return {
            "lemma_ids": self.lemma_ids,
            "descriptions": {i: CHECKS[i].description for i in self.lemma_ids},
            "reports": [report.to_dict() for report in self.reports],
            "matrix": {
                "rows": list(matrix.index),
                "columns": list(matrix.columns),
                "statuses": matrix.to_numpy().tolist(),
            },
            "pass": self.passed,
        }


def _resolve_ids(lemma_ids: Optional[Iterable[str]]) -> list[str]:
    if lemma_ids is None:
        return list(CHECK_IDS)
    unknown = [i for i in lemma_ids if i not in CHECKS]
    if unknown:
        raise ValueError(f"Unknown checks {unknown}, expected ids from {CHECK_IDS}")
    # registry order
    return [i for i in CHECK_IDS if i in set(lemma_ids)]


def run_suite(
    problems: ProblemSpec | Iterable[ProblemSpec],
    settings: Optional[VerifySettings] = None,
    seed: int = 0,
    n_jobs: int = 1,
    strict: bool = False,
    logger: Optional[logging.Logger] = None,
) -> SuiteResult:
    """Run the checks in ``settings.LEMMA_IDS`` (all by default) on each problem.

    A problem whose potential fails the integrability hypothesis gets one
    skipped report per check; with ``strict`` a HypothesisViolationError is
    raised after all problems have been processed.
    """
    if logger is None:
        logger = get_logger("run_suite")
    if settings is None:
        settings = VerifySettings()
    if isinstance(problems, ProblemSpec):
        problems = [problems]
    problems = list(problems)
    lemma_ids = _resolve_ids(settings.LEMMA_IDS)

    violations = {}
    jobs = []
    for index, problem in enumerate(problems):
        hypothesis = problem.q.check_hypothesis(problem.l, logger=logger)
        if not hypothesis.ok:
            logger.warning(f"Skipping the suite for {problem}: {hypothesis.reason}")
            violations[index] = hypothesis.reason
            continue
        jobs.extend((index, lemma_id) for lemma_id in lemma_ids)

    logger.info(
        f"Running {len(jobs)} checks on {len(problems) - len(violations)}"
        f" problem(s) with n_jobs={n_jobs}"
    )
    results = Parallel(n_jobs=n_jobs)(
        delayed(check_bound)(lemma_id, problems[index], settings, seed)
        for index, lemma_id in jobs
    )
    by_job = dict(zip(jobs, results))

    reports = []
    for index, problem in enumerate(problems):
        for lemma_id in lemma_ids:
            if index in violations:
                reason = f"hypothesis violated: {violations[index]}"
                reports.append(skipped_report(lemma_id, problem, reason))
            else:
                reports.append(by_job[(index, lemma_id)])
    result = SuiteResult(reports, lemma_ids)

    not_passed = (STATUS_FAIL, STATUS_INCONCLUSIVE)
    n_failed = sum(report.status in not_passed for report in reports)
    logger.info(f"Suite finished: {len(reports)} reports, {n_failed} not passed")
    if strict and violations:
        first = problems[next(iter(violations))]
        raise HypothesisViolationError(
            f"Potential {first.q.id} violates the integrability hypothesis",
            details={
                "skipped": [
                    {"potential": problems[i].q.id, "l": problems[i].l, "reason": r}
                    for i, r in violations.items()
                ]
            },
        )
    return result
