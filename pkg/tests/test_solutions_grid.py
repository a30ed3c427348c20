"""Tests for the composite Gauss-Legendre panels."""

import numpy as np
import pytest

from radscat.config.main import SolverSettings
from radscat.solutions.grid import PanelGrid, reference_rule


@pytest.mark.parametrize("m", [4, 12, 16])
def test_reference_rule(m):
    nodes, weights, running = reference_rule(m)
    assert weights.sum() == pytest.approx(2.0)
    # the running integral of 1 from -1 to t_i
    np.testing.assert_allclose(running.sum(axis=1), nodes + 1, atol=1e-12)
    with pytest.raises(ValueError):
        nodes[0] = 0.0


@pytest.mark.parametrize("edges", [[0.5, 1.0], [0.0, 1.0, 1.0], [0.0, 2.0, 1.0]])
def test_invalid_edges(edges):
    with pytest.raises(ValueError, match="start at 0"):
        PanelGrid(edges)


def test_integral():
    grid = PanelGrid([0.0, 1.0, 2.0], nodes_per_panel=8)
    assert grid.n_panels == 2
    assert grid.end == 2.0
    assert grid.integral(grid.nodes**3) == pytest.approx(4.0, rel=1e-14)
    assert grid.weights.sum() == pytest.approx(2.0)


def test_cumulative():
    grid = PanelGrid(np.linspace(0, 2, 5))
    at_nodes, at_edges = grid.cumulative(np.cos(grid.nodes))
    np.testing.assert_allclose(at_nodes, np.sin(grid.nodes), atol=1e-13)
    np.testing.assert_allclose(at_edges, np.sin(grid.edges), atol=1e-13)


def test_reverse_cumulative():
    grid = PanelGrid(np.linspace(0, 2, 5))
    at_nodes, at_edges = grid.reverse_cumulative(np.cos(grid.nodes))
    np.testing.assert_allclose(at_nodes, np.sin(2.0) - np.sin(grid.nodes), atol=1e-13)
    np.testing.assert_allclose(at_edges, np.sin(2.0) - np.sin(grid.edges), atol=1e-13)


@pytest.mark.parametrize("damping", [0.5, 3.0])
def test_damped_cumulative(damping):
    grid = PanelGrid(np.linspace(0, 2, 9))
    ones = np.ones_like(grid.nodes)

    at_nodes, at_edges = grid.cumulative(ones, damping)
    expected = (1 - np.exp(-2 * damping * grid.nodes)) / (2 * damping)
    np.testing.assert_allclose(at_nodes, expected, rtol=1e-12)
    expected = (1 - np.exp(-2 * damping * grid.edges)) / (2 * damping)
    np.testing.assert_allclose(at_edges, expected, rtol=1e-12, atol=1e-15)

    at_nodes, at_edges = grid.reverse_cumulative(ones, damping)
    expected = (1 - np.exp(-2 * damping * (2 - grid.nodes))) / (2 * damping)
    np.testing.assert_allclose(at_nodes, expected, rtol=1e-12)


def test_build():
    settings = SolverSettings()
    grid = PanelGrid.build(3.0, 0.0, breakpoints=[1.0, 1.0 + 1e-14, 5.0])
    assert grid.end == 3.0
    assert 1.0 in grid.edges
    assert grid.n_panels == settings.GRADING_LEVELS + 6
    assert np.max(grid.widths) <= settings.MAX_PANEL_WIDTH + 1e-12
    assert grid.edges[1] == pytest.approx(0.5 * 2.0**-settings.GRADING_LEVELS)
    assert grid.m == settings.NODES_PER_PANEL


def test_build_momentum_dependent_width():
    grid = PanelGrid.build(2.0, 9.0)
    assert np.max(grid.widths) <= 0.25 + 1e-12


def test_edge_index():
    grid = PanelGrid([0.0, 0.5, 1.0, 2.0])
    np.testing.assert_array_equal(grid.edge_index([1.0, 2.0, 0.5]), [2, 3, 1])
    with pytest.raises(ValueError, match="not all panel edges"):
        grid.edge_index([1.1])
