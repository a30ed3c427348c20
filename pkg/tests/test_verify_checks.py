"""Tests for the sampled bound and limit checks."""

import numpy as np
import pytest
import pytest_mock

from radscat.config.main import VerifySettings
from radscat.errors import NonConvergenceError
from radscat.problem import ProblemSpec
from radscat.verify import (
    CHECK_IDS,
    BoundCheck,
    BoundCheckReport,
    LimitCheck,
    check_bound,
    get_check,
    sample_grids,
)
from radscat.verify.checks import SCALAR_K_FACTOR, skipped_report

SMALL_SETTINGS = VerifySettings(N_K=7, N_X=7)


def test_registry():
    assert len(CHECK_IDS) == 19
    assert len(set(CHECK_IDS)) == len(CHECK_IDS)
    assert isinstance(get_check("tilde_phi_bound"), BoundCheck)
    assert isinstance(get_check("green_scaled_asymptotics"), LimitCheck)
    assert get_check("jost_near_zero_rate").uses_x is False


def test_get_check_unknown():
    with pytest.raises(ValueError, match="Unknown check"):
        get_check("lemma_1")


@pytest.mark.parametrize(
    "lemma_id,n_rays", [("free_regular_bound", 3), ("tilde_phi_bound", 1)]
)
def test_sample_grids(lemma_id, n_rays):
    settings = VerifySettings(N_K=5, N_X=4, REFINEMENT=3)
    coarse, fine = sample_grids(get_check(lemma_id), settings, seed=1)
    assert len(coarse.k_abs) == 5
    assert len(fine.k_abs) == 13 + 8
    assert len(coarse.x) == 4
    assert len(fine.x) == 10 + 8
    assert len(coarse.rays) == len(fine.rays) == n_rays
    assert len(coarse.k) == 5 * n_rays
    assert np.all(np.diff(fine.k_abs) >= 0)
    # the refined grid contains the coarse one
    for value in coarse.k_abs:
        assert np.min(np.abs(fine.k_abs - value)) <= 1e-12 * value
    for value in coarse.x:
        assert np.min(np.abs(fine.x - value)) <= 1e-12 * value


def test_sample_grids_seed():
    check = get_check("tilde_phi_bound")
    _, fine1 = sample_grids(check, SMALL_SETTINGS, seed=0)
    _, fine2 = sample_grids(check, SMALL_SETTINGS, seed=0)
    _, fine3 = sample_grids(check, SMALL_SETTINGS, seed=1)
    np.testing.assert_array_equal(fine1.k_abs, fine2.k_abs)
    assert not np.array_equal(fine1.k_abs, fine3.k_abs)


def test_sample_grids_no_x():
    coarse, fine = sample_grids(get_check("jost_derivative_bound"), SMALL_SETTINGS)
    assert coarse.x is None and fine.x is None
    assert "x" not in coarse.describe()
    assert coarse.describe()["k_abs"] == [1e-3, 1e3, 6 * SCALAR_K_FACTOR + 1]


def test_tilde_phi_free(free_problem: ProblemSpec):
    # sup |sin u| (1 + u) / u is about 1.71, attained near u = 1.2
    report = check_bound("tilde_phi_bound", free_problem, SMALL_SETTINGS)
    assert report.status == "pass"
    assert 1.55 < report.fitted_C <= report.max_ratio < 1.72
    assert report.kind == "bound"
    assert report.grid_spec["slack"] == 0.1
    assert report.grid_spec["coarse"]["arg_k"] == [0.0]


def test_perturbation_vanishes_for_free(free_problem: ProblemSpec):
    report = check_bound("jost_perturbation_bound", free_problem, SMALL_SETTINGS)
    assert report.passed
    assert (report.fitted_C, report.max_ratio) == (0.0, 0.0)
    assert "q = 0" in report.reason


def test_jost_modulus_free(free_problem: ProblemSpec):
    report = check_bound("jost_modulus_asymptotics", free_problem)
    assert report.passed
    assert report.kind == "limit"
    assert report.sequence == [0.0, 0.0, 0.0]
    assert report.grid_spec == {"scales": [10.0, 100.0, 1000.0], "window": 8}


def test_green_scaled_limit(free_problem: ProblemSpec):
    # the deviation is |sin(eta - xi)| / (eta + xi) for l = 0
    report = check_bound("green_scaled_asymptotics", free_problem)
    assert report.passed
    first, _, last = report.sequence
    assert last < 1 / 2000
    assert report.max_ratio == pytest.approx(last / first)
    assert report.max_ratio < 0.1


def test_inconclusive(free_problem: ProblemSpec, mocker: pytest_mock.MockerFixture):
    mocker.patch(
        "radscat.verify.checks._run_bound",
        side_effect=NonConvergenceError("Volterra iteration stalled"),
    )
    report = check_bound("tilde_phi_bound", free_problem)
    assert report.status == "inconclusive"
    assert report.reason == "NonConvergenceError: Volterra iteration stalled"
    assert report.fitted_C is None


@pytest.mark.parametrize(
    "ratios,reason",
    [([1.0, 1.2], "exceeds"), ([1.0, np.inf], "envelope vanishes")],
)
def test_fail(
    free_problem: ProblemSpec, mocker: pytest_mock.MockerFixture, ratios, reason
):
    mocker.patch("radscat.verify.checks._max_ratio", side_effect=ratios)
    report = check_bound("free_regular_bound", free_problem)
    assert report.status == "fail"
    assert reason in report.reason


def test_within_slack(free_problem: ProblemSpec, mocker: pytest_mock.MockerFixture):
    mocker.patch("radscat.verify.checks._max_ratio", side_effect=[1.0, 1.05])
    assert check_bound("free_regular_bound", free_problem).passed


def test_report_dict():
    report = BoundCheckReport(
        "tilde_phi_bound", "free", 0.0, "bound", "fail", 1.0, 2.0, reason="bad"
    )
    data = report.to_dict()
    assert data["pass"] is False
    assert data["reason"] == "bad"
    assert "sequence" not in data
    assert report.to_record() == {
        "lemma_id": "tilde_phi_bound",
        "potential_id": "free",
        "l": 0.0,
        "status": "fail",
        "fitted_C": 1.0,
        "max_ratio": 2.0,
    }


def test_skipped_report(free_problem: ProblemSpec):
    report = skipped_report("green_scaled_asymptotics", free_problem, "not run")
    assert report.status == "skipped"
    assert report.kind == "limit"
    assert report.reason == "not run"


@pytest.mark.parametrize("l", [0.25, 2.0])
def test_free_green_bound_mixed_regimes(l):
    # grids where one (x, y) pair is far below |k| x = 1 and another far above
    problem = ProblemSpec(l, "free")
    report = check_bound("free_green_bound", problem, VerifySettings(N_K=13, N_X=13))
    assert report.status == "pass"
    assert report.fitted_C < 5
