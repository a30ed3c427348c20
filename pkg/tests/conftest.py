"""Utilities for tests."""

from __future__ import annotations

import datetime
import json
import logging
import math
from pathlib import Path
from typing import Optional

import numpy as np
import pytest
import pytest_mock

from radscat.potentials import WellPotential
from radscat.problem import ProblemSpec
from radscat.utils import StrOrPathLike

FPATH_CONFIG = "config.json"

MOCKED_DATETIME = datetime.datetime(2024, 4, 4, 12, 34, 56, 789000)

# l = 0 well q = -v0 on [0, b] with v0 = pi^2/4: F(0) = cos(pi/2) = 0
RESONANT_WELL = WellPotential(math.pi**2 / 4, 0.0, 1.0)
# F(0) = cos(sqrt(v0)) is about -3.2e-3 for this well
SHIFTED_WELL = WellPotential(math.pi**2 / 4 + 0.01, 0.0, 1.0)
# F(0) is about -3.2e-5, below 1e-4 sup|F| without being a zero
NEAR_WELL = WellPotential(math.pi**2 / 4 + 1e-4, 0.0, 1.0)


@pytest.fixture(autouse=True)
def _release_captured_warnings():
    """Undo ``logging.captureWarnings(True)`` left behind by CLI runs."""
    yield
    logging.captureWarnings(False)


@pytest.fixture()
def datetime_fixture(
    mocker: pytest_mock.MockerFixture,
):
    """Mock the datetime module so that it produces predictable outputs.

    See https://stackoverflow.com/a/75591976 for mocking datetime.datetime.now
    """
    mocked_datetime = mocker.patch("radscat.utils.datetime")
    mocked_datetime.datetime.now.return_value = MOCKED_DATETIME
    yield mocked_datetime


@pytest.fixture()
def free_problem() -> ProblemSpec:
    return ProblemSpec(0, "free")


@pytest.fixture()
def well_problem() -> ProblemSpec:
    return ProblemSpec(0, "well(1,0,1)")


def write_config(
    dpath: StrOrPathLike, fname: str = FPATH_CONFIG, **fields
) -> Path:
    """Write a run configuration built from keyword fields."""
    fpath = Path(dpath) / fname
    fpath.parent.mkdir(parents=True, exist_ok=True)
    fpath.write_text(json.dumps(fields, indent=4))
    return fpath


# closed forms for q = -v0 on [0, b] at l = 0, with K = sqrt(k^2 + v0)


def well_inner_momentum(v0: float, k: complex) -> complex:
    return np.sqrt(np.asarray(k, dtype=complex) ** 2 + v0)


def well_jost_function(v0: float, b: float, k: complex) -> complex:
    """f(k) = e^{ikb} (cos Kb - ik sin(Kb)/K)."""
    kk = well_inner_momentum(v0, k)
    return np.exp(1j * k * b) * (np.cos(kk * b) - 1j * k * np.sin(kk * b) / kk)


def well_regular(v0: float, b: float, k: complex, x: float) -> complex:
    """phi(k^2, x) inside and outside the well."""
    kk = well_inner_momentum(v0, k)
    if x <= b:
        return np.sin(kk * x) / kk
    value, deriv = np.sin(kk * b) / kk, np.cos(kk * b)
    return value * np.cos(k * (x - b)) + deriv * np.sin(k * (x - b)) / k


def well_jost_solution(v0: float, b: float, k: complex, x: float) -> complex:
    """f(k, x) = e^{ikx} beyond b, continued inside the well."""
    if x >= b:
        return np.exp(1j * k * x)
    kk = well_inner_momentum(v0, k)
    return np.exp(1j * k * b) * (
        np.cos(kk * (x - b)) + 1j * k * np.sin(kk * (x - b)) / kk
    )


def well_bound_kappas(v0: float, b: float, n_scan: int = 20000) -> list[float]:
    """Roots of K cos(Kb) + kappa sin(Kb) with K = sqrt(v0 - kappa^2)."""
    from scipy.optimize import brentq

    def func(kappa):
        kk = math.sqrt(v0 - kappa**2)
        return kk * math.cos(kk * b) + kappa * math.sin(kk * b)

    grid = np.linspace(1e-9, math.sqrt(v0) * (1 - 1e-12), n_scan)
    values = [func(kappa) for kappa in grid]
    roots = [
        brentq(func, lo, hi, xtol=1e-15)
        for lo, hi, a, b_ in zip(grid[:-1], grid[1:], values[:-1], values[1:])
        if a * b_ < 0
    ]
    return sorted(roots, reverse=True)


def well_norming_constant(v0: float, b: float, kappa: float) -> float:
    """1 / ||phi(-kappa^2, .)||^2 for the l = 0 well."""
    kk = math.sqrt(v0 - kappa**2)
    inside = (b / 2 - math.sin(2 * kk * b) / (4 * kk)) / kk**2
    outside = (math.sin(kk * b) / kk) ** 2 / (2 * kappa)
    return 1.0 / (inside + outside)


def assert_close(actual, expected, rtol: float = 1e-10, atol: float = 0.0):
    np.testing.assert_allclose(
        np.asarray(actual, dtype=complex),
        np.asarray(expected, dtype=complex),
        rtol=rtol,
        atol=atol,
    )


def get_config_fields(command: str, dpath_out: Optional[Path] = None, **extra):
    fields = {"COMMAND": command}
    if dpath_out is not None:
        fields["OUTPUT_DIR"] = str(dpath_out)
    fields.update(extra)
    return fields
