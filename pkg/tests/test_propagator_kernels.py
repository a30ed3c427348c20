"""Tests for the propagator kernel routes."""

import logging
import math

import numpy as np
import pytest

from radscat.config.main import KernelSettings
from radscat.errors import DomainError, NonConvergenceError, ResonanceRefusalError
from radscat.problem import ProblemSpec
from radscat.propagator import (
    CutoffSpec,
    KernelGrid,
    crank_nicolson_evolve,
    discrete_kernel,
    evolve_state,
    free_kernel,
    kernel_full,
    kernel_highpass,
    kernel_lowpass,
    kernel_series,
    require_no_resonance,
    resolve_cutoff,
)
from radscat.propagator.kernels import (
    high_panel_width,
    highpass_momentum,
    low_panel_width,
)
from radscat.scattering import ResonanceStatus, bound_states

from .conftest import (
    NEAR_WELL,
    RESONANT_WELL,
    assert_close,
    well_norming_constant,
    well_regular,
)


def make_grid(values=None, route="free", **kwargs) -> KernelGrid:
    if values is None:
        values = [[1.0, 2j], [-3.0, 0.5]]
    return KernelGrid(1.0, [0.5, 1.0], [0.5, 1.0], values, route, **kwargs)


def test_kernel_grid_sup():
    grid = make_grid()
    assert grid.sup() == 3.0
    assert grid.sup(lambda x, y: x * y) == pytest.approx(1.5)


def test_kernel_grid_symmetry_defect():
    assert make_grid().symmetry_defect() == pytest.approx(abs(2j + 3.0))
    assert make_grid([[1.0, 2.0], [2.0, 1.0]]).symmetry_defect() == 0.0
    disjoint = KernelGrid(1.0, [0.5], [2.0], [[1.0]], "free")
    assert disjoint.symmetry_defect() == 0.0


def test_kernel_grid_combine():
    combined = make_grid(error_bound=1e-3).combine(
        make_grid(route="lowpass", error_bound=2e-3), "full"
    )
    assert combined.route == "full"
    assert combined.error_bound == pytest.approx(3e-3)
    assert_close(combined.values, 2 * make_grid().values)
    other = KernelGrid(2.0, [0.5, 1.0], [0.5, 1.0], np.zeros((2, 2)), "free")
    with pytest.raises(ValueError, match="same"):
        make_grid().combine(other, "full")


def test_kernel_grid_table():
    table = make_grid().to_table()
    assert len(table) == 4
    assert list(table.columns) == ["t", "x", "y", "re_K", "im_K", "abs_K", "route"]
    assert table["abs_K"].tolist() == [1.0, 2.0, 3.0, 0.5]


@pytest.mark.parametrize(
    "values,route,message",
    [
        ([[1.0, 2.0], [3.0, 4.0]], "exact", "Invalid route"),
        ([[1.0, 2.0]], "free", "do not match"),
    ],
)
def test_kernel_grid_errors(values, route, message):
    with pytest.raises(ValueError, match=message):
        make_grid(values, route)


def test_free_route():
    x = np.array([2.0, 0.5])
    y = np.array([1.0, 3.0, 0.5])
    grids = kernel_series(ProblemSpec(1, "free"), "free", [0.5, 2.0], x, y)
    assert [grid.t for grid in grids] == [0.5, 2.0]
    for grid in grids:
        np.testing.assert_array_equal(grid.x, x)
        np.testing.assert_array_equal(grid.y, y)
        expected = free_kernel(1, grid.t, x[:, None], y[None, :])
        assert_close(grid.values, expected, rtol=1e-12)


def test_kernel_series_errors(free_problem: ProblemSpec):
    with pytest.raises(ValueError, match="Invalid route"):
        kernel_series(free_problem, "exact", [1.0], [1.0], [1.0])
    with pytest.raises(DomainError, match="x, y > 0"):
        kernel_series(free_problem, "free", [1.0], [0.0], [1.0])
    with pytest.raises(DomainError, match="t > 0"):
        kernel_series(free_problem, "discrete", [-1.0], [1.0], [1.0])


def test_require_no_resonance():
    report = require_no_resonance(ProblemSpec(0, NEAR_WELL))
    assert report.status == ResonanceStatus.NEAR_RESONANT
    with pytest.raises(ResonanceRefusalError, match="near_resonant") as excinfo:
        require_no_resonance(ProblemSpec(0, NEAR_WELL), refuse_near=True)
    assert excinfo.value.exit_code == 4
    with pytest.raises(ResonanceRefusalError) as excinfo:
        require_no_resonance(ProblemSpec(0, RESONANT_WELL))
    assert excinfo.value.details["status"] == "resonant"


@pytest.mark.parametrize("route", ["lowpass", "full"])
def test_resonant_routes_refused(route):
    with pytest.raises(ResonanceRefusalError):
        kernel_series(ProblemSpec(0, RESONANT_WELL), route, [1.0], [1.0], [1.0])


def test_resolve_cutoff(free_problem: ProblemSpec):
    assert resolve_cutoff(free_problem, KernelSettings(K0=2.0)) == CutoffSpec(2.0)
    # the free Born series contracts at once
    assert resolve_cutoff(free_problem).k0 == pytest.approx(0.5)


def test_discrete_kernel():
    problem = ProblemSpec(0, "well(10,0,1)")
    states = bound_states(problem, n_scan=200)
    (state,) = states
    t, x, y = 0.7, np.array([0.4, 1.5]), np.array([0.8])
    grid = discrete_kernel(problem, t, x, y, states=states)
    assert grid.route == "discrete"
    gamma = well_norming_constant(10.0, 1.0, state.kappa)
    phi_x = np.array([well_regular(10.0, 1.0, 1j * state.kappa, v) for v in x])
    phi_y = np.array([well_regular(10.0, 1.0, 1j * state.kappa, v) for v in y])
    expected = np.exp(1j * t * state.kappa**2) * gamma * np.outer(phi_x, phi_y)
    assert_close(grid.values, expected, rtol=1e-7)


def test_discrete_route_free(free_problem: ProblemSpec):
    (grid,) = kernel_series(free_problem, "discrete", [1.0], [0.5, 1.0], [2.0])
    assert grid.values.shape == (2, 1)
    assert np.all(grid.values == 0)


def test_panel_widths(free_problem: ProblemSpec):
    settings = KernelSettings()
    assert low_panel_width(free_problem, np.array([2.0]), settings) == 0.25
    assert low_panel_width(free_problem, np.array([40.0]), settings) == 0.1
    assert high_panel_width(free_problem, settings) == 0.25
    wide = ProblemSpec(0, "well(1,0,8)")
    assert high_panel_width(wide, settings) == pytest.approx(0.125)


def test_highpass_momentum():
    cutoff = CutoffSpec(1.0)
    settings = KernelSettings()
    reach = (24 / math.pi / settings.TAIL_TOL) ** 0.2
    k_end = highpass_momentum(1.0, 6.0, cutoff, 0.25, settings)
    assert k_end == pytest.approx((6.0 + reach) / 2)


def test_highpass_momentum_capped(caplog: pytest.LogCaptureFixture):
    settings = KernelSettings(K_MAX=5.0)
    with caplog.at_level(logging.WARNING):
        k_end = highpass_momentum(1.0, 6.0, CutoffSpec(1.0), 0.25, settings)
    assert k_end == 5.0
    assert "capped" in caplog.text
    with pytest.raises(NonConvergenceError, match="Stationary points"):
        highpass_momentum(1.0, 20.0, CutoffSpec(1.0), 0.25, settings)


def test_evolve_state_support(free_problem: ProblemSpec):
    with pytest.raises(DomainError, match="Invalid support"):
        evolve_state(free_problem, np.ones_like, 1.0, [1.0], (2.0, 1.0))


@pytest.mark.slow
def test_full_route_free(free_problem: ProblemSpec):
    x, y = np.array([0.5, 1.5]), np.array([1.0, 2.5])
    grid = kernel_full(free_problem, 1.0, x, y, KernelSettings(K0=1.0))
    assert grid.route == "full"
    assert grid.cutoff == CutoffSpec(1.0)
    expected = free_kernel(0, 1.0, x[:, None], y[None, :])
    assert_close(grid.values, expected, atol=1e-6)


@pytest.mark.slow
def test_evolve_state_free(free_problem: ProblemSpec):
    # e^{-itH} e^{-4x^2} on the line, odd about x = 0
    def spreading(t, x):
        width = 1 + 16j * t
        return np.exp(-4 * x**2 / width) / np.sqrt(width)

    t, x = 1.0, np.array([4.0, 5.0, 6.0])
    values = evolve_state(
        free_problem,
        lambda y: spreading(0, y - 5),
        t,
        x,
        support=(2.0, 8.0),
        settings=KernelSettings(K0=1.0),
    )
    expected = spreading(t, x - 5) - spreading(t, x + 5)
    assert_close(values, expected, atol=1e-5)


@pytest.mark.slow
@pytest.mark.parametrize("l", [0, 1])
def test_routes_agree_on_well(l: int):
    problem = ProblemSpec(l, "well(1,0,1)")
    cutoff = CutoffSpec(1.0)
    x = np.array([0.5, 1.5, 2.5])
    low = kernel_lowpass(problem, cutoff, 1.0, x, x)
    high = kernel_highpass(problem, cutoff, 1.0, x, x)
    full = kernel_full(problem, 1.0, x, x, cutoff=cutoff)
    assert (low.route, high.route, full.route) == ("lowpass", "highpass", "full")
    for grid in (low, high, full):
        assert grid.cutoff == cutoff
        assert np.all(np.isfinite(grid.values))
        assert grid.symmetry_defect() < 1e-6 * grid.sup()
    # spectral and resolvent forms of the low-energy part
    assert_close(low.values + high.values, full.values, rtol=1e-6, atol=1e-9)


@pytest.mark.slow
def test_evolve_state_matches_time_stepping():
    problem = ProblemSpec(0, "well(20,0,1)")

    def psi0(y):
        return y * np.exp(-((y - 2) ** 2))

    t, x = 5.0, np.array([1.0, 2.0, 3.0])
    values = evolve_state(problem, psi0, t, x, support=(0.0, 8.0))
    expected = crank_nicolson_evolve(problem, psi0, t, x)
    assert_close(values, expected, atol=1e-4)
