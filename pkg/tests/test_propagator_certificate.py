"""Tests for the t^{-1/2} decay certificate."""

import math

import numpy as np
import pytest

from radscat.errors import DomainError, ResonanceRefusalError
from radscat.problem import ProblemSpec
from radscat.propagator import DecayReport, decay_certificate

from .conftest import NEAR_WELL, RESONANT_WELL

T_LIST = np.geomspace(1.0, 100.0, 5)
# covers xy / 2t up to pi / 2 at t = 100
X_GRID = np.linspace(0.5, 20.0, 40)


def test_free_certificate(free_problem: ProblemSpec):
    report = decay_certificate(free_problem, T_LIST[::-1], X_GRID)
    np.testing.assert_allclose(report.t, T_LIST)
    assert report.route == "free"
    assert report.k0 is None
    # sup_s sqrt(s) |J_{1/2}(s)| / sqrt(2) = 1 / sqrt(pi)
    assert report.sup_sqrt_t_M == pytest.approx(1 / math.sqrt(math.pi), rel=1e-2)
    assert report.exponent == pytest.approx(-0.5, abs=0.01)
    assert report.spread < 0.01
    assert report.passed


def test_free_certificate_outputs(free_problem: ProblemSpec):
    report = decay_certificate(free_problem, T_LIST, X_GRID, y=X_GRID[::4])
    table = report.to_table()
    assert list(table.columns) == ["t", "M", "sqrt_t_M"]
    assert len(table) == len(T_LIST)
    result = report.to_dict()
    assert result["pass"] is True
    assert result["fitted_exponent"] == report.exponent
    assert len(result["sqrt_t_M"]) == len(T_LIST)


def test_fixed_points_decay_faster(free_problem: ProblemSpec):
    # at fixed (x, y) the l = 0 kernel decays like t^{-3/2}
    report = decay_certificate(free_problem, T_LIST * 100, [0.5, 1.0])
    assert report.exponent == pytest.approx(-1.5, abs=0.01)
    assert not report.passed


def test_report_passed():
    t = np.array([1.0, 10.0, 100.0])
    report = DecayReport(t, 1 / np.sqrt(t), exponent=-0.5, spread=0.0, route="full")
    assert report.passed
    np.testing.assert_allclose(report.sqrt_t_M, 1.0)
    failed = DecayReport(t, 1 / np.sqrt(t), exponent=-0.5, spread=0.5, route="full")
    assert not failed.passed


@pytest.mark.parametrize(
    "t_list,message",
    [([1.0, 2.0], "at least 3"), ([0.0, 1.0, 2.0], "t > 0")],
)
def test_certificate_errors(free_problem: ProblemSpec, t_list, message):
    with pytest.raises(DomainError, match=message):
        decay_certificate(free_problem, t_list, [1.0])


@pytest.mark.parametrize("potential", [RESONANT_WELL, NEAR_WELL])
def test_certificate_refuses_resonance(potential):
    with pytest.raises(ResonanceRefusalError):
        decay_certificate(ProblemSpec(0, potential), T_LIST, [1.0])


@pytest.mark.slow
def test_well_certificate(well_problem: ProblemSpec):
    report = decay_certificate(well_problem, T_LIST, X_GRID)
    assert report.route == "full"
    assert report.k0 is not None
    assert -0.55 <= report.exponent <= -0.45
    assert report.spread < 0.25
    assert report.passed
