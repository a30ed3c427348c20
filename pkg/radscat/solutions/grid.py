"""Composite Gauss-Legendre panels with running (cumulative) integrals."""

from __future__ import annotations

import math
from functools import lru_cache
from typing import Iterable, Optional

import numpy as np
from numpy.polynomial import legendre

from radscat.config.main import SolverSettings

# breakpoints closer than this (relative) are merged
MERGE_RTOL = 1e-12


@lru_cache(maxsize=16)
def reference_rule(m: int) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Gauss-Legendre nodes/weights on [-1, 1] and S[i, j] = int_{-1}^{t_i} l_j.

    l_j is the Lagrange basis polynomial of node j, so S @ g gives the running
    integral of the interpolant of g at the nodes.
    """
    nodes, weights = legendre.leggauss(m)
    vander = legendre.legvander(nodes, m - 1)
    # columns of coeffs are the Legendre coefficients of the Lagrange basis
    coeffs = np.linalg.inv(vander)
    antiderivs = legendre.legint(coeffs, lbnd=-1, axis=0)
    running = legendre.legvander(nodes, m) @ antiderivs
    for array in (nodes, weights, running):
        array.setflags(write=False)
    return nodes, weights, running


class PanelGrid:
    """Panels [e_p, e_{p+1}] of [0, end] with m Gauss-Legendre nodes each.

    Parameters
    ----------
    edges : array
        Increasing panel edges starting at 0
    nodes_per_panel : int
        Gauss-Legendre nodes per panel
    """

    def __init__(self, edges: Iterable[float], nodes_per_panel: int = 16):
        self.edges = np.asarray(edges, dtype=float)
        if self.edges[0] != 0 or np.any(np.diff(self.edges) <= 0):
            raise ValueError("Panel edges must start at 0 and be strictly increasing")
        self.m = nodes_per_panel
        ref_nodes, ref_weights, running = reference_rule(nodes_per_panel)
        self.widths = np.diff(self.edges)
        self.half = self.widths / 2
        self.nodes = self.edges[:-1, None] + self.half[:, None] * (ref_nodes + 1)
        self._weights = ref_weights
        self._running = running
        self._running_rev = ref_weights[None, :] - running

    @property
    def n_panels(self) -> int:
        return len(self.widths)

    @property
    def end(self) -> float:
        return float(self.edges[-1])

    @property
    def weights(self) -> np.ndarray:
        """Quadrature weights at the nodes, shape (n_panels, m)."""
        return self.half[:, None] * self._weights[None, :]

    @classmethod
    def build(
        cls,
        end: float,
        k_abs: float,
        breakpoints: Iterable[float] = (),
        settings: Optional[SolverSettings] = None,
    ) -> PanelGrid:
        """Panels of width <= min(MAX_PANEL_WIDTH, PANEL_WAVES/(1+|k|)).

        Every breakpoint in (0, end) becomes a panel edge, and the first panel
        is split geometrically towards 0.
        """
        if settings is None:
            settings = SolverSettings()
        width = min(settings.MAX_PANEL_WIDTH, settings.PANEL_WAVES / (1 + k_abs))
        interior = {float(b) for b in breakpoints if 0 < b < end}
        points = sorted({0.0, float(end)} | interior)
        merged = [points[0]]
        for point in points[1:]:
            if point - merged[-1] > MERGE_RTOL * max(1.0, point):
                merged.append(point)
        merged[-1] = float(end)

        edges = [0.0]
        for lo, hi in zip(merged[:-1], merged[1:]):
            n = max(1, math.ceil((hi - lo) / width - 1e-9))
            edges.extend(lo + (hi - lo) * np.arange(1, n + 1) / n)
        first = edges[1]
        graded = list(first * 2.0 ** -np.arange(settings.GRADING_LEVELS, 0, -1))
        return cls([0.0] + graded + edges[1:], settings.NODES_PER_PANEL)

    def edge_index(self, x) -> np.ndarray:
        """Indices of the edges that coincide with the points x."""
        x = np.atleast_1d(np.asarray(x, dtype=float))
        idx = np.clip(np.searchsorted(self.edges, x), 0, len(self.edges) - 1)
        left = np.clip(idx - 1, 0, None)
        closer = np.abs(self.edges[left] - x) < np.abs(self.edges[idx] - x)
        idx = np.where(closer, left, idx)
        if not np.allclose(self.edges[idx], x, rtol=1e-10, atol=1e-14):
            raise ValueError(f"Points {x} are not all panel edges")
        return idx

    def integral(self, g: np.ndarray):
        """Integral of g (values at the nodes) over [0, end]."""
        return np.sum(self.half * (g @ self._weights))

    def cumulative(self, g: np.ndarray, damping: float = 0.0):
        """int_0^x exp(-2 damping (x - y)) g(y) dy at the nodes and at the edges."""
        if damping == 0:
            local = self.half[:, None] * (g @ self._running.T)
            totals = self.half * (g @ self._weights)
            at_edges = np.concatenate([[0.0], np.cumsum(totals)])
            return at_edges[:-1, None] + local, at_edges

        offset = self.nodes - self.edges[:-1, None]
        grow = np.exp(2 * damping * offset)
        shrink = np.exp(-2 * damping * offset)
        decay = np.exp(-2 * damping * self.widths)
        weighted = g * grow
        local = self.half[:, None] * (weighted @ self._running.T) * shrink
        totals = self.half * (weighted @ self._weights) * decay
        at_edges = np.zeros(self.n_panels + 1, dtype=np.result_type(g, float))
        for p in range(self.n_panels):
            at_edges[p + 1] = decay[p] * at_edges[p] + totals[p]
        return at_edges[:-1, None] * shrink + local, at_edges

    def reverse_cumulative(self, g: np.ndarray, damping: float = 0.0):
        """int_x^end exp(-2 damping (y - x)) g(y) dy at the nodes and at the edges."""
        if damping == 0:
            local = self.half[:, None] * (g @ self._running_rev.T)
            totals = self.half * (g @ self._weights)
            at_edges = np.concatenate([np.cumsum(totals[::-1])[::-1], [0.0]])
            return at_edges[1:, None] + local, at_edges

        offset = self.edges[1:, None] - self.nodes
        grow = np.exp(2 * damping * offset)
        shrink = np.exp(-2 * damping * offset)
        decay = np.exp(-2 * damping * self.widths)
        weighted = g * grow
        local = self.half[:, None] * (weighted @ self._running_rev.T) * shrink
        totals = self.half * (weighted @ self._weights) * decay
        at_edges = np.zeros(self.n_panels + 1, dtype=np.result_type(g, float))
        for p in range(self.n_panels - 1, -1, -1):
            at_edges[p] = totals[p] + decay[p] * at_edges[p + 1]
        return at_edges[1:, None] * shrink + local, at_edges
