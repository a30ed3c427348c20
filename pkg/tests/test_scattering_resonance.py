"""Tests for the zero-energy resonance classification."""

import math

import pytest
import pytest_mock

from radscat.errors import DomainError
from radscat.potentials import WellPotential
from radscat.problem import ProblemSpec
from radscat.scattering import (
    ResonanceStatus,
    resonance_status,
    resonant_coupling,
    sup_jost_F,
)

from .conftest import NEAR_WELL, RESONANT_WELL, SHIFTED_WELL


@pytest.mark.parametrize(
    "potential,threshold,expected",
    [
        ("free", 1e-4, ResonanceStatus.NONE),
        ("well(1,0,1)", 1e-4, ResonanceStatus.NONE),
        (RESONANT_WELL, 1e-4, ResonanceStatus.RESONANT),
        (NEAR_WELL, 1e-4, ResonanceStatus.NEAR_RESONANT),
        (SHIFTED_WELL, 1e-4, ResonanceStatus.NONE),
        (SHIFTED_WELL, 4e-3, ResonanceStatus.INCONCLUSIVE),
        (SHIFTED_WELL, 1e-2, ResonanceStatus.NEAR_RESONANT),
    ],
)
def test_resonance_status(potential, threshold, expected):
    report = resonance_status(ProblemSpec(0, potential), threshold=threshold)
    assert report.status == expected
    assert report.threshold == threshold


def test_resonant_report():
    report = resonance_status(ProblemSpec(0, RESONANT_WELL))
    assert report.abs_F0 < 1e-10
    assert report.growth_ratio < 1
    assert report.x_far == pytest.approx(1e4)


def test_non_resonant_report():
    report = resonance_status(ProblemSpec(0, "well(1,0,1)"))
    assert report.F0.real == pytest.approx(math.cos(1.0), rel=1e-9)
    assert report.growth_ratio > 1


@pytest.mark.parametrize(
    "threshold,message",
    [(1e-2, "near a zero-energy resonance"), (4e-3, "criteria disagree")],
)
def test_resonance_warnings(caplog: pytest.LogCaptureFixture, threshold, message):
    resonance_status(ProblemSpec(0, SHIFTED_WELL), threshold=threshold)
    assert message in caplog.text


def test_to_dict():
    report = resonance_status(ProblemSpec(0, "free"))
    assert report.to_dict() == {
        "status": "none",
        "abs_F0": 1.0,
        "sup_F": 1.0,
        "growth_ratio": float("inf"),
        "x_far": 1.0,
        "threshold": 1e-4,
    }


def _well_of_depth(v0: float) -> ProblemSpec:
    return ProblemSpec(0, WellPotential(v0, 0.0, 1.0))


def test_sup_jost_F_attractive_well():
    # |F(k)|^2 = cos^2 K + k^2 sin^2(K) / K^2 <= 1 for the attractive well
    assert sup_jost_F(ProblemSpec(0, "well(1,0,1)")) == pytest.approx(1.0)


def test_threshold_is_relative_to_sup_F(mocker: pytest_mock.MockerFixture):
    mocker.patch("radscat.scattering.resonance.sup_jost_F", return_value=100.0)
    report = resonance_status(ProblemSpec(0, SHIFTED_WELL))
    assert report.sup_F == 100.0
    assert report.relative_F0 == pytest.approx(report.abs_F0 / 100)
    assert report.status == ResonanceStatus.NEAR_RESONANT


def test_resonant_coupling_flips_status():
    v0_star = resonant_coupling(_well_of_depth, 2.0, 3.0)
    assert v0_star == pytest.approx(math.pi**2 / 4, abs=1e-9)
    assert resonance_status(_well_of_depth(v0_star)).status == (
        ResonanceStatus.RESONANT
    )
    below = resonance_status(_well_of_depth(v0_star - 1e-3))
    above = resonance_status(_well_of_depth(v0_star + 1e-3))
    assert below.status == above.status == ResonanceStatus.NONE
    assert below.F0.real > 0 > above.F0.real


def test_resonant_coupling_no_sign_change():
    with pytest.raises(DomainError, match="does not change sign"):
        resonant_coupling(_well_of_depth, 0.5, 1.5)
