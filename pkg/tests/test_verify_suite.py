"""Tests for the check suite and its traceability matrix."""

import pytest

from radscat.config.main import VerifySettings
from radscat.errors import HypothesisViolationError
from radscat.problem import ProblemSpec
from radscat.verify import run_suite

LEMMA_IDS = ["tilde_phi_bound", "jost_modulus_asymptotics"]
SETTINGS = VerifySettings(LEMMA_IDS=LEMMA_IDS[::-1], N_K=7, N_X=7)


@pytest.fixture()
def problems() -> list[ProblemSpec]:
    return [ProblemSpec(0, "free"), ProblemSpec(0, "power(1,3,1)")]


def test_run_suite_free(free_problem: ProblemSpec):
    result = run_suite(free_problem, SETTINGS)
    # registry order, not the requested order
    assert result.lemma_ids == LEMMA_IDS
    assert [report.lemma_id for report in result.reports] == LEMMA_IDS
    assert result.passed
    assert result.skipped == []
    assert list(result.matrix.columns) == ["free l=0"]
    assert result.matrix.loc["tilde_phi_bound", "free l=0"] == "pass"


def test_run_suite_to_dict(free_problem: ProblemSpec):
    data = run_suite(free_problem, SETTINGS).to_dict()
    assert data["pass"] is True
    assert data["lemma_ids"] == LEMMA_IDS
    assert set(data["descriptions"]) == set(LEMMA_IDS)
    assert len(data["reports"]) == 2
    assert data["matrix"] == {
        "rows": LEMMA_IDS,
        "columns": ["free l=0"],
        "statuses": [["pass"], ["pass"]],
    }


def test_run_suite_unknown_id(free_problem: ProblemSpec):
    with pytest.raises(ValueError, match="Unknown checks"):
        run_suite(free_problem, VerifySettings(LEMMA_IDS=["lemma_1"]))


def test_run_suite_skips_violations(problems):
    result = run_suite(problems, SETTINGS)
    assert len(result.reports) == 4
    assert len(result.skipped) == 2
    for report in result.skipped:
        assert report.potential_id == "power(1,3,1)"
        assert report.reason.startswith("hypothesis violated: ")
    # skipped checks do not count against the suite
    assert result.passed
    assert list(result.matrix.columns) == ["free l=0", "power(1,3,1) l=0"]
    assert list(result.matrix["power(1,3,1) l=0"]) == ["skipped", "skipped"]


def test_run_suite_strict(problems):
    with pytest.raises(
        HypothesisViolationError, match="power\\(1,3,1\\) violates"
    ) as exc_info:
        run_suite(problems, SETTINGS, strict=True)
    skipped = exc_info.value.details["skipped"]
    assert [(item["potential"], item["l"]) for item in skipped] == [
        ("power(1,3,1)", 0.0)
    ]
    assert exc_info.value.exit_code == 3


@pytest.mark.slow
def test_run_suite_defaults_pass():
    problems = [
        ProblemSpec(l, potential)
        for potential in ("free", "well(1,0,1)", "expdecay(1,1)")
        for l in (0, 0.25, 1, 2)
    ]
    result = run_suite(problems)
    failing = [
        (report.lemma_id, report.potential_id, report.l)
        for report in result.reports
        if report.status not in ("pass", "skipped")
    ]
    assert failing == []
    assert result.passed
