"""Kernels of e^{-itH} P_c(H) on (x, y) grids.

Every numerical route integrates an amplitude A(k; x, y) against e^{-itk^2}
over k > 0:

- spectral (low pass): (2/pi) phi~(k, x) phi~(k, y) / |F(k)|^2 with
  phi~ = k^{l+1} phi(k^2, .), weighted by 1 - chi
- resolvent (low part of the full kernel): (2/pi) phi~(k, min) Im omega(k, max)
  with omega = e^{-i pi l/2} f(k, .) / F(k), weighted by 1 - chi
- high pass: the spectral amplitude written with Jost solutions,
  (1/2pi) [f_x conj f_y + conj f_x f_y - rho f_x f_y - conj(rho f_x f_y)]
  with rho = f(-k)/f(k), weighted by chi, plus an integration-by-parts tail

Amplitudes do not depend on t. They are sampled once per (problem, points)
at the Gauss nodes of the k panels and reused for every time.
"""

from __future__ import annotations

import logging
import math
from abc import ABC, abstractmethod
from dataclasses import dataclass
from typing import Callable, Optional, Sequence

import numpy as np
from joblib import Parallel, delayed

from radscat.config.main import KernelSettings
from radscat.errors import DomainError, NonConvergenceError, ResonanceRefusalError
from radscat.logger import get_logger
from radscat.oscint import FilonRule, graded_edges, ibp_tail, legendre_tail, panel_nodes
from radscat.problem import ProblemSpec
from radscat.propagator.born import default_k0
from radscat.propagator.cutoff import CutoffSpec
from radscat.propagator.free import free_kernel
from radscat.scattering import (
    BoundState,
    ResonanceReport,
    ResonanceStatus,
    bound_states,
    resonance_status,
)
from radscat.solutions import solve_jost, solve_regular
from radscat.tabular.kernel import KERNEL_ROUTES, KernelTable

LOW_GRADING_LEVELS = 8
# trailing Legendre coefficients above this fraction of the amplitude fail
MAX_LEGENDRE_TAIL = 1e-3
TAIL_STEP = 1e-4
STATIONARY_MARGIN = 1.1
EVOLVE_NODES = 64


@dataclass
class KernelGrid:
    """Kernel values K(t, x_i, y_j) computed by one route."""

    t: float
    x: np.ndarray
    y: np.ndarray
    values: np.ndarray
    route: str
    cutoff: Optional[CutoffSpec] = None
    error_bound: float = 0.0

    def __post_init__(self):
        if self.route not in KERNEL_ROUTES:
            raise ValueError(
                f"Invalid route '{self.route}'. Must be one of: {KERNEL_ROUTES}."
            )
        self.x = np.asarray(self.x, dtype=float)
        self.y = np.asarray(self.y, dtype=float)
        self.values = np.asarray(self.values, dtype=complex)
        if self.values.shape != (len(self.x), len(self.y)):
            raise ValueError(
                f"Kernel values of shape {self.values.shape} do not match the"
                f" ({len(self.x)}, {len(self.y)}) grid"
            )

    def sup(self, weight: Optional[Callable] = None) -> float:
        """max |K(x, y)|, optionally times weight(x, y)."""
        values = np.abs(self.values)
        if weight is not None:
            values = values * weight(self.x[:, None], self.y[None, :])
        return float(np.max(values))

    def symmetry_defect(self) -> float:
        """max |K(x, y) - K(y, x)| over positions present in both grids."""
        _, ix, iy = np.intersect1d(self.x, self.y, return_indices=True)
        if len(ix) == 0:
            return 0.0
        block = self.values[np.ix_(ix, iy)]
        return float(np.max(np.abs(block - block.T)))

    def combine(self, other: KernelGrid, route: str) -> KernelGrid:
        """Sum of two kernels on the same grid."""
        if (
            other.t != self.t
            or not np.array_equal(other.x, self.x)
            or not np.array_equal(other.y, self.y)
        ):
            raise ValueError("Only kernels on the same (t, x, y) grid can be added")
        return KernelGrid(
            t=self.t,
            x=self.x,
            y=self.y,
            values=self.values + other.values,
            route=route,
            cutoff=self.cutoff if self.cutoff is not None else other.cutoff,
            error_bound=self.error_bound + other.error_bound,
        )

    def to_records(self) -> list[dict]:
        return [
            {
                "t": float(self.t),
                "x": float(x),
                "y": float(y),
                "re_K": float(value.real),
                "im_K": float(value.imag),
                "abs_K": float(abs(value)),
                "route": self.route,
            }
            for x, row in zip(self.x, self.values)
            for y, value in zip(self.y, row)
        ]

    def to_table(self) -> KernelTable:
        return KernelTable.from_records(self.to_records())


@dataclass(frozen=True)
class _Points:
    """Sorted union of the x and y positions with the indices back into it."""

    values: np.ndarray
    ix: np.ndarray
    iy: np.ndarray

    @classmethod
    def union(cls, x, y) -> _Points:
        x = np.atleast_1d(np.asarray(x, dtype=float))
        y = np.atleast_1d(np.asarray(y, dtype=float))
        if np.any(x <= 0) or np.any(y <= 0):
            raise DomainError("Kernels are evaluated at x, y > 0")
        values = np.union1d(x, y)
        return cls(values, np.searchsorted(values, x), np.searchsorted(values, y))

    @property
    def x(self) -> np.ndarray:
        return self.values[self.ix]

    @property
    def y(self) -> np.ndarray:
        return self.values[self.iy]


# ---------------------------------------------------------------------------
# amplitude samples (module level so that joblib can pickle them)


def _regular_point(problem: ProblemSpec, k: float, points: np.ndarray):
    """phi~(k, x) and F(k)."""
    regular = solve_regular(problem, k, points)
    return k ** (problem.l + 1) * regular.value.real, complex(regular.jost_F)


def _resolvent_point(problem: ProblemSpec, k: float, points: np.ndarray):
    """phi~(k, x), Im omega(k, x) and F(k)."""
    regular = solve_regular(problem, k, points)
    jost = solve_jost(problem, k, points)
    jost_F = complex(regular.jost_F)
    omega = np.exp(-0.5j * np.pi * problem.l) * jost.value / jost_F
    return k ** (problem.l + 1) * regular.value.real, omega.imag, jost_F


def _jost_point(problem: ProblemSpec, k: float, points: np.ndarray):
    """h(k, x) = e^{-ikx} f(k, x) and rho(k) = f(-k)/f(k)."""
    jost = solve_jost(problem, k, points)
    jost_F = complex(jost.jost_F)
    h = np.exp(-1j * k * points) * jost.value
    rho = np.exp(-1j * np.pi * problem.l) * np.conj(jost_F) / jost_F
    return h, rho


def _sample(func, problem: ProblemSpec, nodes: np.ndarray, points, n_jobs: int):
    """func at every node, each output stacked to nodes.shape + its own shape."""
    results = Parallel(n_jobs=n_jobs)(
        delayed(func)(problem, float(k), points) for k in nodes.ravel()
    )
    return [
        np.stack([np.asarray(result[i]) for result in results]).reshape(
            nodes.shape + np.shape(results[0][i])
        )
        for i in range(len(results[0]))
    ]


def _check_resolution(values: np.ndarray, edges: np.ndarray, label: str) -> float:
    """Largest trailing Legendre coefficient relative to sup |values|."""
    scale = float(np.max(np.abs(values)))
    if scale == 0:
        return 0.0
    tail = legendre_tail(values) / scale
    worst = int(np.argmax(tail))
    if tail[worst] > MAX_LEGENDRE_TAIL:
        raise NonConvergenceError(
            f"The {label} amplitude is not resolved on the panel"
            f" [{edges[worst]:.6g}, {edges[worst + 1]:.6g}]",
            details={
                "amplitude": label,
                "panel": worst,
                "k_interval": [float(edges[worst]), float(edges[worst + 1])],
                "relative_tail": float(tail[worst]),
            },
        )
    return float(tail[worst])


def _joined_edges(breaks: Sequence[float], width: float, levels: int = 0):
    """Panels of width <= ``width`` with edges at every break."""
    pieces = [
        graded_edges(lo, hi, width, levels if i == 0 else 0)
        for i, (lo, hi) in enumerate(zip(breaks[:-1], breaks[1:]))
    ]
    return np.concatenate([pieces[0]] + [piece[1:] for piece in pieces[1:]])


def low_panel_width(
    problem: ProblemSpec, points: np.ndarray, settings: KernelSettings
) -> float:
    """phi~(k, x) oscillates like sin(kx), F on the scale of the potential."""
    reach = max(1.0, float(np.max(points)), 2 * problem.q.effective_range)
    return min(settings.LOW_PANEL_WIDTH, 4.0 / reach)


def high_panel_width(problem: ProblemSpec, settings: KernelSettings) -> float:
    """h(k, x) carries e^{-2ikx} reflections inside the potential."""
    return min(
        settings.HIGH_PANEL_WIDTH, 2.0 / max(1.0, 2 * problem.q.effective_range)
    )


def highpass_momentum(
    t: float,
    c_max: float,
    cutoff: CutoffSpec,
    width: float,
    settings: KernelSettings,
    logger: Optional[logging.Logger] = None,
) -> float:
    """Upper end K of the high-pass panels for times >= t.

    Beyond K the integral is replaced by two integration-by-parts terms; K is
    chosen so that the next term is about TAIL_TOL.
    """
    if logger is None:
        logger = get_logger("highpass_momentum")
    reach = (24 * t**2 / math.pi / settings.TAIL_TOL) ** 0.2
    k_end = max(cutoff.upper + width, (c_max + reach) / (2 * t))
    k_cap = max(settings.K_MAX, cutoff.upper + width)
    if k_end > k_cap:
        logger.warning(
            f"High-pass quadrature at t={t:g} wants k up to {k_end:.4g};"
            f" capped at {k_cap:g}, the tail estimate will be larger"
        )
        k_end = k_cap
    if k_end <= STATIONARY_MARGIN * c_max / (2 * t):
        raise NonConvergenceError(
            f"Stationary points of the high-pass phase lie beyond k={k_end:g}"
            f" at t={t:g}; raise K_MAX or use larger times",
            details={"t": t, "k_end": k_end, "c_max": c_max},
        )
    return float(k_end)


class _Amplitudes(ABC):
    """Amplitude samples on fixed k panels, integrated for one t at a time."""

    route: str

    def __init__(self, problem: ProblemSpec, cutoff: CutoffSpec, points: _Points):
        self.problem = problem
        self.cutoff = cutoff
        self.points = points

    @abstractmethod
    def integrate(self, t: float) -> tuple[np.ndarray, float]:
        """Kernel values on the (x, y) grid and their error estimate."""

    def kernel(self, t: float) -> KernelGrid:
        values, error = self.integrate(t)
        return KernelGrid(
            t=t,
            x=self.points.x,
            y=self.points.y,
            values=values,
            route=self.route,
            cutoff=self.cutoff,
            error_bound=error,
        )


class _SpectralAmplitudes(_Amplitudes):
    route = "lowpass"

    def __init__(
        self,
        problem: ProblemSpec,
        cutoff: CutoffSpec,
        points: _Points,
        settings: KernelSettings,
        n_jobs: int,
        logger: logging.Logger,
    ):
        super().__init__(problem, cutoff, points)
        self.m = settings.NODES_PER_PANEL
        width = low_panel_width(problem, points.values, settings)
        self.edges = _joined_edges(
            (0.0, cutoff.lower, cutoff.upper), width, LOW_GRADING_LEVELS
        )
        nodes = panel_nodes(self.edges, self.m)
        logger.info(
            f"Sampling the spectral amplitude of {problem} at {nodes.size} momenta"
        )
        self.phi, jost_F = _sample(
            _regular_point, problem, nodes, points.values, n_jobs
        )
        self.inv_F2 = 1.0 / np.abs(jost_F) ** 2
        self.resolution = max(
            _check_resolution(self.phi, self.edges, "phi"),
            _check_resolution(self.inv_F2, self.edges, "1/|F|^2"),
        )
        self.scale = (
            2 / np.pi * np.max(np.abs(self.phi)) ** 2 * np.max(self.inv_F2)
        ) * cutoff.upper

    def integrate(self, t: float) -> tuple[np.ndarray, float]:
        rule = FilonRule(-t, self.edges, self.m)
        ix, iy = self.points.ix, self.points.iy
        values = np.zeros((len(ix), len(iy)), dtype=complex)
        for p in range(rule.n_panels):
            s = rule.panel_slice(p)
            lagrange = rule.lagrange(p)
            phi = lagrange @ self.phi[p]
            weights = (
                rule.fine_weights[s]
                * self.cutoff.lowpass(rule.fine_nodes[s])
                * (lagrange @ self.inv_F2[p])
            )
            values += (phi[:, ix] * weights[:, None]).T @ phi[:, iy]
        return 2 / np.pi * values, self.resolution * self.scale


class _ResolventAmplitudes(_Amplitudes):
    route = "full"

    def __init__(
        self,
        problem: ProblemSpec,
        cutoff: CutoffSpec,
        points: _Points,
        settings: KernelSettings,
        n_jobs: int,
        logger: logging.Logger,
    ):
        super().__init__(problem, cutoff, points)
        self.m = settings.NODES_PER_PANEL
        width = low_panel_width(problem, points.values, settings)
        self.edges = _joined_edges(
            (0.0, cutoff.lower, cutoff.upper), width, LOW_GRADING_LEVELS
        )
        nodes = panel_nodes(self.edges, self.m)
        logger.info(
            f"Sampling the resolvent amplitude of {problem} at {nodes.size} momenta"
        )
        self.phi, self.im_omega, _ = _sample(
            _resolvent_point, problem, nodes, points.values, n_jobs
        )
        self.resolution = max(
            _check_resolution(self.phi, self.edges, "phi"),
            _check_resolution(self.im_omega, self.edges, "Im omega"),
        )
        self.scale = (
            2
            / np.pi
            * np.max(np.abs(self.phi))
            * np.max(np.abs(self.im_omega))
            * cutoff.upper
        )

    def integrate(self, t: float) -> tuple[np.ndarray, float]:
        rule = FilonRule(-t, self.edges, self.m)
        ix, iy = self.points.ix, self.points.iy
        # x <= y takes phi at x, x > y takes phi at y
        below = np.zeros((len(ix), len(iy)), dtype=complex)
        above = np.zeros_like(below)
        for p in range(rule.n_panels):
            s = rule.panel_slice(p)
            lagrange = rule.lagrange(p)
            phi = lagrange @ self.phi[p]
            im_omega = lagrange @ self.im_omega[p]
            lowpass = self.cutoff.lowpass(rule.fine_nodes[s])
            weights = (rule.fine_weights[s] * lowpass)[:, None]
            below += (phi[:, ix] * weights).T @ im_omega[:, iy]
            above += (im_omega[:, ix] * weights).T @ phi[:, iy]
        lower = self.points.x[:, None] <= self.points.y[None, :]
        values = np.where(lower, below, above)
        return 2 / np.pi * values, self.resolution * self.scale


class _HighpassAmplitudes(_Amplitudes):
    route = "highpass"

    def __init__(
        self,
        problem: ProblemSpec,
        cutoff: CutoffSpec,
        points: _Points,
        t_min: float,
        settings: KernelSettings,
        n_jobs: int,
        logger: logging.Logger,
    ):
        super().__init__(problem, cutoff, points)
        self.m = settings.NODES_PER_PANEL
        self.t_min = t_min
        self.c_max = 2 * float(np.max(points.values))
        width = high_panel_width(problem, settings)
        self.k_end = highpass_momentum(
            t_min, self.c_max, cutoff, width, settings, logger
        )
        self.edges = _joined_edges((cutoff.lower, cutoff.upper, self.k_end), width)
        nodes = panel_nodes(self.edges, self.m)
        logger.info(
            f"Sampling the high-pass amplitude of {problem} at {nodes.size} momenta"
            f" up to k={self.k_end:.4g}"
        )
        self.h, self.rho = _sample(_jost_point, problem, nodes, points.values, n_jobs)
        ends = np.array([self.k_end * (1 - TAIL_STEP), self.k_end])
        self.h_end, self.rho_end = _sample(
            _jost_point, problem, ends, points.values, n_jobs
        )
        self.resolution = max(
            _check_resolution(self.h, self.edges, "h"),
            _check_resolution(self.rho, self.edges, "rho"),
        )
        self.scale = (
            2 / np.pi * np.max(np.abs(self.h)) ** 2 * (self.k_end - cutoff.lower)
        )

    def _tail(self, t: float) -> tuple[np.ndarray, float]:
        """int_K^inf of the four Jost products, two terms each."""
        ix, iy = self.points.ix, self.points.iy
        x = self.points.x[:, None]
        y = self.points.y[None, :]
        hx = self.h_end[:, ix][:, :, None]
        hy = self.h_end[:, iy][:, None, :]
        rho = self.rho_end[:, None, None]
        pieces = (
            (x - y, hx * np.conj(hy)),
            (y - x, np.conj(hx) * hy),
            (x + y, -rho * hx * hy),
            (-(x + y), -np.conj(rho * hx * hy)),
        )
        step = self.k_end * TAIL_STEP
        total = np.zeros((len(ix), len(iy)), dtype=complex)
        error = 0.0
        for c, amplitude in pieces:
            c = np.broadcast_to(c, total.shape)
            deriv = (amplitude[1] - amplitude[0]) / step
            term, term_error = ibp_tail(
                -t, c, self.k_end, amplitude[1], deriv, "right"
            )
            total += term
            error += float(np.max(term_error))
        return total / (2 * np.pi), error / (2 * np.pi)

    def integrate(self, t: float) -> tuple[np.ndarray, float]:
        if t < self.t_min:
            raise ValueError(
                f"High-pass panels were built for t >= {self.t_min:g}, got t={t:g}"
            )
        rule = FilonRule(-t, self.edges, self.m, max_frequency=self.c_max)
        ix, iy = self.points.ix, self.points.iy
        positions = self.points.values
        values = np.zeros((len(ix), len(iy)), dtype=complex)
        for p in range(rule.n_panels):
            s = rule.panel_slice(p)
            k = rule.fine_nodes[s]
            lagrange = rule.lagrange(p)
            f = np.exp(1j * np.outer(k, positions)) * (lagrange @ self.h[p])
            rho = lagrange @ self.rho[p]
            weights = rule.fine_weights[s] * self.cutoff.chi(k)
            fx, fy = f[:, ix], f[:, iy]
            values += (fx * weights[:, None]).T @ np.conj(fy)
            values += (np.conj(fx) * weights[:, None]).T @ fy
            values -= (fx * (weights * rho)[:, None]).T @ fy
            values -= (np.conj(fx) * (weights * np.conj(rho))[:, None]).T @ np.conj(fy)
        values /= 2 * np.pi
        tail, tail_error = self._tail(t)
        return values + tail, self.resolution * self.scale + tail_error


# ---------------------------------------------------------------------------
# public interface


def require_no_resonance(
    problem: ProblemSpec,
    settings: Optional[KernelSettings] = None,
    refuse_near: bool = False,
    logger: Optional[logging.Logger] = None,
) -> ResonanceReport:
    """Zero-energy report; raises ResonanceRefusalError for excluded cases."""
    if settings is None:
        settings = KernelSettings()
    report = resonance_status(problem, settings.RESONANCE_THRESHOLD, logger=logger)
    refused = {ResonanceStatus.RESONANT, ResonanceStatus.INCONCLUSIVE}
    if refuse_near:
        refused.add(ResonanceStatus.NEAR_RESONANT)
    if report.status in refused:
        raise ResonanceRefusalError(
            f"{problem} has zero-energy status '{report.status.value}'",
            details=report.to_dict(),
        )
    return report


def resolve_cutoff(
    problem: ProblemSpec,
    settings: Optional[KernelSettings] = None,
    logger: Optional[logging.Logger] = None,
) -> CutoffSpec:
    """K0 from the settings, else from the Born contraction ratio."""
    if settings is None:
        settings = KernelSettings()
    if settings.K0 is not None:
        return CutoffSpec(settings.K0)
    return CutoffSpec(default_k0(problem, logger=logger))


def _check_times(t_grid) -> np.ndarray:
    t_grid = np.atleast_1d(np.asarray(t_grid, dtype=float))
    if np.any(t_grid <= 0):
        raise DomainError("Numerical kernels are computed for t > 0")
    return t_grid


def _bound_modes(
    problem: ProblemSpec,
    states: list[BoundState],
    points: np.ndarray,
) -> list[tuple[BoundState, np.ndarray]]:
    return [
        (state, solve_regular(problem, 1j * state.kappa, points).value.real)
        for state in states
    ]


def _discrete_values(modes, t: float, points: _Points) -> np.ndarray:
    values = np.zeros((len(points.ix), len(points.iy)), dtype=complex)
    for state, phi in modes:
        # e^{-it lambda} with lambda = -kappa^2
        phase = np.exp(1j * t * state.kappa**2) * state.gamma
        values += phase * np.outer(phi[points.ix], phi[points.iy])
    return values


def kernel_series(
    problem: ProblemSpec,
    route: str,
    t_grid,
    x,
    y,
    settings: Optional[KernelSettings] = None,
    cutoff: Optional[CutoffSpec] = None,
    n_jobs: int = 1,
    logger: Optional[logging.Logger] = None,
) -> list[KernelGrid]:
    """Kernels of one route at several times, sharing the amplitude samples.

    Parameters
    ----------
    route : str
        "free" (closed form of the unperturbed operator with the same l),
        "lowpass", "highpass", "full" (continuous part, resolvent route below
        3 k0 plus the high pass) or "discrete" (bound-state part)
    cutoff : CutoffSpec, optional
        Energy split; from ``settings.K0`` or the Born series if unset
    """
    if logger is None:
        logger = get_logger("kernel_series")
    if settings is None:
        settings = KernelSettings()
    if route not in KERNEL_ROUTES:
        raise ValueError(f"Invalid route '{route}'. Must be one of: {KERNEL_ROUTES}.")
    points = _Points.union(x, y)

    if route == "free":
        t_grid = np.atleast_1d(np.asarray(t_grid, dtype=float))
        x_col, y_row = np.ix_(points.x, points.y)
        return [
            KernelGrid(
                t, points.x, points.y, free_kernel(problem.l, t, x_col, y_row), route
            )
            for t in t_grid
        ]

    t_grid = _check_times(t_grid)
    if route == "discrete":
        states = bound_states(problem, n_jobs=n_jobs, logger=logger)
        modes = _bound_modes(problem, states, points.values)
        return [
            KernelGrid(t, points.x, points.y, _discrete_values(modes, t, points), route)
            for t in t_grid
        ]

    if route in ("lowpass", "full"):
        require_no_resonance(problem, settings, logger=logger)
    if cutoff is None:
        cutoff = resolve_cutoff(problem, settings, logger=logger)
    logger.info(f"Kernel route '{route}' for {problem} with k0={cutoff.k0:.4g}")

    if route == "lowpass":
        low = _SpectralAmplitudes(problem, cutoff, points, settings, n_jobs, logger)
        return [low.kernel(t) for t in t_grid]

    high = _HighpassAmplitudes(
        problem, cutoff, points, float(np.min(t_grid)), settings, n_jobs, logger
    )
    if route == "highpass":
        return [high.kernel(t) for t in t_grid]

    low = _ResolventAmplitudes(problem, cutoff, points, settings, n_jobs, logger)
    return [low.kernel(t).combine(high.kernel(t), "full") for t in t_grid]


def kernel_lowpass(
    problem: ProblemSpec,
    cutoff: CutoffSpec,
    t: float,
    x,
    y,
    settings: Optional[KernelSettings] = None,
    n_jobs: int = 1,
    logger: Optional[logging.Logger] = None,
) -> KernelGrid:
    """(2/pi) int e^{-itk^2} (1 - chi) phi~(k, x) phi~(k, y) / |F(k)|^2 dk."""
    return kernel_series(
        problem, "lowpass", [t], x, y, settings, cutoff, n_jobs, logger
    )[0]


def kernel_highpass(
    problem: ProblemSpec,
    cutoff: CutoffSpec,
    t: float,
    x,
    y,
    settings: Optional[KernelSettings] = None,
    n_jobs: int = 1,
    logger: Optional[logging.Logger] = None,
) -> KernelGrid:
    """The part of the continuous kernel carried by chi, including k > K."""
    return kernel_series(
        problem, "highpass", [t], x, y, settings, cutoff, n_jobs, logger
    )[0]


def kernel_full(
    problem: ProblemSpec,
    t: float,
    x,
    y,
    settings: Optional[KernelSettings] = None,
    cutoff: Optional[CutoffSpec] = None,
    n_jobs: int = 1,
    logger: Optional[logging.Logger] = None,
) -> KernelGrid:
    """Kernel of e^{-itH} P_c(H); bound states are not included."""
    grids = kernel_series(problem, "full", [t], x, y, settings, cutoff, n_jobs, logger)
    return grids[0]


def discrete_kernel(
    problem: ProblemSpec,
    t: float,
    x,
    y,
    states: Optional[list[BoundState]] = None,
    n_jobs: int = 1,
    logger: Optional[logging.Logger] = None,
) -> KernelGrid:
    """sum_n e^{-it lambda_n} gamma_n phi(lambda_n, x) phi(lambda_n, y)."""
    points = _Points.union(x, y)
    if states is None:
        states = bound_states(problem, n_jobs=n_jobs, logger=logger)
    modes = _bound_modes(problem, states, points.values)
    return KernelGrid(
        t, points.x, points.y, _discrete_values(modes, t, points), "discrete"
    )


def evolve_state(
    problem: ProblemSpec,
    psi0: Callable[[np.ndarray], np.ndarray],
    t: float,
    x,
    support: tuple[float, float],
    n_nodes: int = EVOLVE_NODES,
    settings: Optional[KernelSettings] = None,
    cutoff: Optional[CutoffSpec] = None,
    n_jobs: int = 1,
    logger: Optional[logging.Logger] = None,
) -> np.ndarray:
    """(e^{-itH} psi0)(x) from the continuous and discrete kernels.

    psi0 is integrated with ``n_nodes`` Gauss-Legendre nodes on ``support``.
    """
    lo, hi = support
    if not 0 <= lo < hi:
        raise DomainError(f"Invalid support [{lo}, {hi}] of the initial state")
    ref_nodes, ref_weights = np.polynomial.legendre.leggauss(n_nodes)
    y = (hi + lo) / 2 + (hi - lo) / 2 * ref_nodes
    weights = (hi - lo) / 2 * ref_weights
    continuous = kernel_full(problem, t, x, y, settings, cutoff, n_jobs, logger)
    discrete = discrete_kernel(problem, t, x, y, n_jobs=n_jobs, logger=logger)
    values = continuous.values + discrete.values
    return values @ (weights * psi0(y))
