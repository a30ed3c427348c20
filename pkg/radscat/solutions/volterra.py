"""Regular and Jost solutions of the perturbed equation by successive iteration.

All solvers work with exponentially scaled quantities (s = Im k >= 0):
phi = exp(s x) u for the regular solution and f = exp(-s x) v for the Jost
solution. The Green's function is written with the pair (phi_l, psi_l),
G(x, y) = phi_l(x) psi_l(y) - psi_l(x) phi_l(y), so that every running
integral is either plain or damped by exp(-2 s |x - y|).
"""

from __future__ import annotations

import cmath
import logging
import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from radscat.config.main import SolverSettings
from radscat.errors import DomainError, NonConvergenceError
from radscat.logger import get_logger
from radscat.problem import ProblemSpec, SolutionSample
from radscat.solutions.grid import PanelGrid
from radscat.specfun.free import (
    canonical_root,
    free_weyl_m,
    phi_l_dk_scaled,
    phi_l_scaled,
    psi_l_dk_scaled,
    psi_l_scaled,
    theta_l_scaled,
)


@dataclass(frozen=True)
class _Kernel:
    """u_next = out_plain * I[in_plain q u] - out_damped * I_s[in_damped q u]."""

    out_plain: np.ndarray
    in_plain: np.ndarray
    out_damped: np.ndarray
    in_damped: np.ndarray
    reverse: bool = False


@dataclass
class _Iterated:
    u: np.ndarray
    plain: np.ndarray
    plain_edges: np.ndarray
    damped: np.ndarray
    damped_edges: np.ndarray
    iterations: int
    tail: float


def _iterate(
    grid: PanelGrid,
    qy: np.ndarray,
    kernel: _Kernel,
    start: np.ndarray,
    damping: float,
    settings: SolverSettings,
    offset: complex = 0.0,
    label: str = "Volterra iteration",
) -> _Iterated:
    """Sum the Neumann series of u = start + K u on the grid nodes.

    Stops when the newest term is below REL_TOL times the accumulated solution
    (and the accumulated boundary integral plus offset).
    """
    integrate = grid.reverse_cumulative if kernel.reverse else grid.cumulative
    total_idx = 0 if kernel.reverse else -1

    term = np.asarray(start, dtype=complex)
    u = term.copy()
    plain = np.zeros_like(u)
    damped = np.zeros_like(u)
    plain_edges = np.zeros(grid.n_panels + 1, dtype=complex)
    damped_edges = np.zeros(grid.n_panels + 1, dtype=complex)
    previous = None
    for iteration in range(1, settings.MAX_ITERATIONS + 1):
        p_nodes, p_edges = integrate(kernel.in_plain * qy * term)
        d_nodes, d_edges = integrate(kernel.in_damped * qy * term, damping)
        plain += p_nodes
        plain_edges += p_edges
        damped += d_nodes
        damped_edges += d_edges
        term = kernel.out_plain * p_nodes - kernel.out_damped * d_nodes
        u += term

        size = max(float(np.max(np.abs(term))), abs(p_edges[total_idx]))
        scale = max(float(np.max(np.abs(u))), abs(offset + plain_edges[total_idx]))
        if not (math.isfinite(size) and math.isfinite(scale)):
            raise NonConvergenceError(
                f"{label} produced non-finite values after {iteration} iterations",
                {"iterations": iteration},
            )
        ratio = size / previous if previous else 1.0
        if size <= settings.REL_TOL * scale:
            tail = size * ratio / (1 - ratio) if ratio < 1 else size
            return _Iterated(
                u, plain, plain_edges, damped, damped_edges, iteration, float(tail)
            )
        previous = size

    raise NonConvergenceError(
        f"{label} did not converge within {settings.MAX_ITERATIONS} iterations",
        {
            "iterations": settings.MAX_ITERATIONS,
            "last_term": size,
            "scale": scale,
        },
    )


def _check_points(x) -> np.ndarray:
    x = np.atleast_1d(np.asarray(x, dtype=float))
    if x.ndim != 1 or np.any(x <= 0):
        raise DomainError("Solutions are evaluated at x > 0 only")
    return x


def _reflected(k: complex) -> bool:
    return k.imag < 0 or (k.imag == 0 and k.real < 0)


class _Setup:
    """Grid, potential values and free blocks shared by the solvers."""

    def __init__(self, problem: ProblemSpec, k: complex, x: np.ndarray):
        self.problem = problem
        self.l = problem.l
        self.k = k
        self.s = k.imag
        self.x = x
        self.end = problem.truncation_radius
        self.grid = PanelGrid.build(
            self.end,
            abs(k),
            breakpoints=list(problem.q.breakpoints) + list(x[x < self.end]),
            settings=problem.settings,
        )
        self.inside = x <= self.end
        self.idx = self.grid.edge_index(x[self.inside]) if self.inside.any() else []
        self.qy = problem.q(self.grid.nodes)
        nodes = self.grid.nodes
        self.a, self.a_d = phi_l_scaled(self.l, k, nodes)
        self.b, self.b_d = psi_l_scaled(self.l, k, nodes)
        self.a_x, self.a_dx = phi_l_scaled(self.l, k, x)
        self.b_x, self.b_dx = psi_l_scaled(self.l, k, x)

    def at_points(self, edges: np.ndarray, beyond) -> np.ndarray:
        """Edge values of a running integral at the points, `beyond` past the end."""
        out = np.empty(len(self.x), dtype=complex)
        out[~self.inside] = beyond[~self.inside] if np.ndim(beyond) else beyond
        out[self.inside] = edges[self.idx]
        return out

    def decay(self) -> np.ndarray:
        """exp(-2 s (x - X)) beyond the truncation radius."""
        return np.exp(-2 * self.s * np.maximum(self.x - self.end, 0.0))


# ---------------------------------------------------------------------------
# regular solution


@dataclass
class RegularSolution:
    """phi(k^2, x) at a set of points.

    ``jost_F`` is F(k) = 1 + int_0^inf psi_l q phi and ``inner`` is
    int_0^X phi_l q phi (only meaningful for Im k >= 0).
    """

    k: complex
    x: np.ndarray
    value: np.ndarray
    dx: np.ndarray
    iterations: int
    tail_bound: np.ndarray
    jost_F: Optional[complex] = None
    inner: Optional[complex] = None
    dk: Optional[np.ndarray] = None
    dk_dx: Optional[np.ndarray] = None
    jost_F_dk: Optional[complex] = None
    grid: Optional[PanelGrid] = None
    node_values: Optional[np.ndarray] = None

    def sample(self, i: int = 0) -> SolutionSample:
        return SolutionSample(
            value=complex(self.value[i]),
            dx=complex(self.dx[i]),
            dk=None if self.dk is None else complex(self.dk[i]),
            iterations_used=self.iterations,
            tail_bound=float(self.tail_bound[i]),
        )


def _free_regular(problem: ProblemSpec, k: complex, x: np.ndarray, with_dk: bool):
    l, s = problem.l, k.imag
    grow = np.exp(s * x)
    a, a_d = phi_l_scaled(l, k, x)
    solution = RegularSolution(
        k, x, a * grow, a_d * grow, 0, np.zeros(len(x)), jost_F=1.0, inner=0.0
    )
    if with_dk:
        if k == 0:
            solution.dk = np.zeros(len(x), dtype=complex)
            solution.dk_dx = np.zeros(len(x), dtype=complex)
        else:
            ad, ad_d = phi_l_dk_scaled(l, k, x)
            solution.dk, solution.dk_dx = ad * grow, ad_d * grow
            solution.jost_F_dk = 0.0
    return solution


def solve_regular(
    problem: ProblemSpec, k: complex, x, with_dk: bool = False
) -> RegularSolution:
    """Regular solution phi(k^2, x), normalized like phi_l at x -> 0.

    Parameters
    ----------
    problem : ProblemSpec
        Angular momentum and potential
    k : complex
        Momentum; phi only depends on k^2, k-derivatives are odd in k
    x : float or array
        Positive evaluation points
    with_dk : bool
        Also compute d/dk phi, its x-derivative and F'(k)
    """
    k = complex(k)
    x = _check_points(x)
    if _reflected(k):
        solution = solve_regular(problem, -k, x, with_dk)
        solution.k = k
        if k.imag == 0:
            solution.jost_F = np.conj(solution.jost_F)
            solution.inner = np.conj(solution.inner)
        else:
            solution.jost_F = solution.inner = None
        if with_dk:
            solution.dk, solution.dk_dx = -solution.dk, -solution.dk_dx
            if solution.jost_F_dk is not None and k.imag == 0:
                solution.jost_F_dk = -np.conj(solution.jost_F_dk)
            else:
                solution.jost_F_dk = None
        return solution

    if problem.is_free or problem.truncation_radius == 0:
        return _free_regular(problem, k, x, with_dk)

    setup = _Setup(problem, k, x)
    s, grid, qy = setup.s, setup.grid, setup.qy
    a, b = setup.a, setup.b
    kernel = _Kernel(out_plain=a, in_plain=b, out_damped=b, in_damped=a)
    it = _iterate(
        grid, qy, kernel, a, s, problem.settings, 1.0, "Regular solution iteration"
    )

    decay = setup.decay()
    plain = setup.at_points(it.plain_edges, it.plain_edges[-1])
    damped = setup.at_points(it.damped_edges, it.damped_edges[-1] * decay)
    u = setup.a_x * (1 + plain) - setup.b_x * damped
    u_d = setup.a_dx * (1 + plain) - setup.b_dx * damped
    grow = np.exp(s * x)
    solution = RegularSolution(
        k=k,
        x=x,
        value=u * grow,
        dx=u_d * grow,
        iterations=it.iterations,
        tail_bound=it.tail * grow,
        jost_F=1 + it.plain_edges[-1],
        inner=it.damped_edges[-1] * np.exp(2 * s * setup.end),
        grid=grid,
        node_values=it.u * np.exp(s * grid.nodes),
    )
    if not with_dk:
        return solution
    if k == 0:
        solution.dk = np.zeros(len(x), dtype=complex)
        solution.dk_dx = np.zeros(len(x), dtype=complex)
        return solution

    l = problem.l
    ad, ad_d = phi_l_dk_scaled(l, k, grid.nodes)
    bd, bd_d = psi_l_dk_scaled(l, k, grid.nodes)
    # d/dk of the free parts of G against the converged phi
    psi_dot, psi_dot_edges = grid.cumulative(bd * qy * it.u)
    phi_dot, phi_dot_edges = grid.cumulative(ad * qy * it.u, s)
    start = ad * (1 + it.plain) + a * psi_dot - bd * it.damped - b * phi_dot
    it_dk = _iterate(
        grid,
        qy,
        kernel,
        start,
        s,
        problem.settings,
        psi_dot_edges[-1],
        "Regular solution k-derivative iteration",
    )

    ad_x, ad_dx = phi_l_dk_scaled(l, k, x)
    bd_x, bd_dx = psi_l_dk_scaled(l, k, x)
    psi_dot_x = setup.at_points(psi_dot_edges, psi_dot_edges[-1])
    phi_dot_x = setup.at_points(phi_dot_edges, phi_dot_edges[-1] * decay)
    plain_dk = setup.at_points(it_dk.plain_edges, it_dk.plain_edges[-1])
    damped_dk = setup.at_points(it_dk.damped_edges, it_dk.damped_edges[-1] * decay)
    u_dk = (
        ad_x * (1 + plain)
        + setup.a_x * (psi_dot_x + plain_dk)
        - bd_x * damped
        - setup.b_x * (phi_dot_x + damped_dk)
    )
    u_dk_d = (
        ad_dx * (1 + plain)
        + setup.a_dx * (psi_dot_x + plain_dk)
        - bd_dx * damped
        - setup.b_dx * (phi_dot_x + damped_dk)
    )
    solution.dk = u_dk * grow
    solution.dk_dx = u_dk_d * grow
    solution.jost_F_dk = psi_dot_edges[-1] + it_dk.plain_edges[-1]
    solution.iterations = max(it.iterations, it_dk.iterations)
    return solution


def regular_solution(problem: ProblemSpec, z: complex, x: float) -> SolutionSample:
    """phi(z, x) with its x-derivative."""
    return solve_regular(problem, canonical_root(z), float(x)).sample()


def regular_solution_dk(problem: ProblemSpec, k: complex, x: float) -> complex:
    """d/dk phi(k^2, x); zero at k = 0."""
    return complex(solve_regular(problem, k, float(x), with_dk=True).dk[0])


# ---------------------------------------------------------------------------
# Jost solution


@dataclass
class JostSolution:
    """f(k, x) at a set of points; ``jost_F`` is F(k) from int_0^inf phi_l q f."""

    k: complex
    x: np.ndarray
    value: np.ndarray
    dx: np.ndarray
    iterations: int
    tail_bound: np.ndarray
    jost_F: complex
    dk: Optional[np.ndarray] = None
    dk_dx: Optional[np.ndarray] = None

    @property
    def h_dk(self) -> np.ndarray:
        """d/dk of h(k, x) = exp(-ikx) f(k, x)."""
        return np.exp(-1j * self.k * self.x) * (self.dk - 1j * self.x * self.value)

    def sample(self, i: int = 0) -> SolutionSample:
        return SolutionSample(
            value=complex(self.value[i]),
            dx=complex(self.dx[i]),
            dk=None if self.dk is None else complex(self.dk[i]),
            iterations_used=self.iterations,
            tail_bound=float(self.tail_bound[i]),
        )


def _jost_prefactor(l: float, k: complex) -> complex:
    return cmath.exp(0.5j * math.pi * l) * k ** (-l)


def solve_jost(
    problem: ProblemSpec, k: complex, x, with_dk: bool = False
) -> JostSolution:
    """Jost solution f(k, x) ~ exp(ikx) as x -> inf, for Im k >= 0, k != 0.

    Parameters
    ----------
    with_dk : bool
        Also compute d/dk f and its x-derivative
    """
    k = complex(k)
    x = _check_points(x)
    if k == 0:
        raise DomainError("The Jost solution is singular at k = 0")
    if k.imag < 0:
        raise DomainError(f"The Jost solution needs Im k >= 0, got k={k}")
    if k.real < 0 and k.imag == 0:
        solution = solve_jost(problem, -k, x, with_dk)
        solution.k = k
        solution.value, solution.dx = np.conj(solution.value), np.conj(solution.dx)
        solution.jost_F = np.conj(solution.jost_F)
        if with_dk:
            solution.dk = -np.conj(solution.dk)
            solution.dk_dx = -np.conj(solution.dk_dx)
        return solution

    l, s = problem.l, k.imag
    c_f = _jost_prefactor(l, k)
    shrink = np.exp(-s * x)
    if problem.is_free or problem.truncation_radius == 0:
        b, b_d = psi_l_scaled(l, k, x)
        solution = JostSolution(
            k, x, c_f * b * shrink, c_f * b_d * shrink, 0, np.zeros(len(x)), 1.0
        )
        if with_dk:
            bd, bd_d = psi_l_dk_scaled(l, k, x)
            solution.dk = c_f * (bd - (l / k) * b) * shrink
            solution.dk_dx = c_f * (bd_d - (l / k) * b_d) * shrink
        return solution

    setup = _Setup(problem, k, x)
    grid, qy = setup.grid, setup.qy
    a, b = setup.a, setup.b
    kernel = _Kernel(out_plain=b, in_plain=a, out_damped=a, in_damped=b, reverse=True)
    it = _iterate(
        grid, qy, kernel, c_f * b, s, problem.settings, c_f, "Jost solution iteration"
    )

    plain = setup.at_points(it.plain_edges, 0.0)
    damped = setup.at_points(it.damped_edges, 0.0)
    v = setup.b_x * (c_f + plain) - setup.a_x * damped
    v_d = setup.b_dx * (c_f + plain) - setup.a_dx * damped
    solution = JostSolution(
        k=k,
        x=x,
        value=v * shrink,
        dx=v_d * shrink,
        iterations=it.iterations,
        tail_bound=it.tail * shrink,
        jost_F=1 + it.plain_edges[0] / c_f,
    )
    if not with_dk:
        return solution

    ad, _ = phi_l_dk_scaled(l, k, grid.nodes)
    bd, _ = psi_l_dk_scaled(l, k, grid.nodes)
    psi_dot, psi_dot_edges = grid.reverse_cumulative(bd * qy * it.u, s)
    phi_dot, phi_dot_edges = grid.reverse_cumulative(ad * qy * it.u)
    start = c_f * (bd - (l / k) * b) - (
        ad * it.damped + a * psi_dot - bd * it.plain - b * phi_dot
    )
    it_dk = _iterate(
        grid,
        qy,
        kernel,
        start,
        s,
        problem.settings,
        0.0,
        "Jost solution k-derivative iteration",
    )

    ad_x, ad_dx = phi_l_dk_scaled(l, k, x)
    bd_x, bd_dx = psi_l_dk_scaled(l, k, x)
    psi_dot_x = setup.at_points(psi_dot_edges, 0.0)
    phi_dot_x = setup.at_points(phi_dot_edges, 0.0)
    plain_dk = setup.at_points(it_dk.plain_edges, 0.0)
    damped_dk = setup.at_points(it_dk.damped_edges, 0.0)
    v_dk = (
        c_f * (bd_x - (l / k) * setup.b_x)
        - ad_x * damped
        - setup.a_x * (psi_dot_x + damped_dk)
        + bd_x * plain
        + setup.b_x * (phi_dot_x + plain_dk)
    )
    v_dk_d = (
        c_f * (bd_dx - (l / k) * setup.b_dx)
        - ad_dx * damped
        - setup.a_dx * (psi_dot_x + damped_dk)
        + bd_dx * plain
        + setup.b_dx * (phi_dot_x + plain_dk)
    )
    solution.dk = v_dk * shrink
    solution.dk_dx = v_dk_d * shrink
    solution.iterations = max(it.iterations, it_dk.iterations)
    return solution


def jost_solution(problem: ProblemSpec, k: complex, x: float) -> SolutionSample:
    """f(k, x) with its x-derivative."""
    return solve_jost(problem, k, float(x)).sample()


def jost_solution_dk(problem: ProblemSpec, k: complex, x: float) -> complex:
    """d/dk f(k, x)."""
    return complex(solve_jost(problem, k, float(x), with_dk=True).dk[0])


def jost_h_dk(problem: ProblemSpec, k: complex, x: float) -> complex:
    """d/dk h(k, x) with h(k, x) = exp(-ikx) f(k, x)."""
    return complex(solve_jost(problem, k, float(x), with_dk=True).h_dk[0])


# ---------------------------------------------------------------------------
# second solution


@dataclass
class SecondSolution:
    """Real solution theta(k^2, x) with W(theta, phi) = 1, for real k."""

    k: float
    x: np.ndarray
    value: np.ndarray
    dx: np.ndarray
    iterations: int
    wronskian_scale: float
    weyl_m: complex


def second_normalization(
    problem: ProblemSpec, k: float, logger: Optional[logging.Logger] = None
) -> tuple[float, complex, complex]:
    """W(theta_l, phi) = F - m_l int_0^X phi_l q phi, with F(k) and m_l(k^2).

    theta_l and phi are real for real k, so the Wronskian is real; an imaginary
    part above round-off is logged.
    """
    if logger is None:
        logger = get_logger("second_normalization")
    m_free = free_weyl_m(problem.l, k)
    if problem.is_free or problem.truncation_radius == 0:
        return 1.0, 1.0 + 0j, m_free
    regular = solve_regular(problem, k, problem.truncation_radius)
    wronskian = regular.jost_F - regular.inner * m_free
    if abs(wronskian.imag) > 1e-8 * max(1.0, abs(wronskian)):
        logger.warning(
            f"W(theta_l, phi) has imaginary part {wronskian.imag:.3e} at k={k}"
        )
    return float(wronskian.real), complex(regular.jost_F), m_free


def solve_second(
    problem: ProblemSpec,
    k: float,
    x,
    logger: Optional[logging.Logger] = None,
) -> SecondSolution:
    """theta = eta / W(eta, phi) where eta = theta_l beyond the truncation radius.

    eta is continued inward by the backward iteration. Since theta is real,
    Im m(k^2) = k / |f(k)|^2 holds for m = -W(f, theta) / W(f, phi).
    """
    k = complex(k)
    if k.imag != 0 or k == 0:
        raise DomainError(f"The second solution is built for real k != 0, got k={k}")
    k = abs(k.real)
    x = _check_points(x)
    l = problem.l
    wronskian, jost_F, m_free = second_normalization(problem, k, logger)

    if problem.is_free or problem.truncation_radius == 0:
        c, c_d = theta_l_scaled(l, k**2, x)
        return SecondSolution(k, x, c.real, c_d.real, 0, 1.0, m_free)

    setup = _Setup(problem, complex(k), x)
    c, _ = theta_l_scaled(l, k**2, setup.grid.nodes)
    c_x, c_dx = theta_l_scaled(l, k**2, x)
    kernel = _Kernel(
        out_plain=setup.b,
        in_plain=setup.a,
        out_damped=setup.a,
        in_damped=setup.b,
        reverse=True,
    )
    it = _iterate(
        setup.grid,
        setup.qy,
        kernel,
        c,
        0.0,
        problem.settings,
        0.0,
        "Second solution iteration",
    )
    plain = setup.at_points(it.plain_edges, 0.0)
    damped = setup.at_points(it.damped_edges, 0.0)
    eta = c_x + setup.b_x * plain - setup.a_x * damped
    eta_d = c_dx + setup.b_dx * plain - setup.a_dx * damped
    return SecondSolution(
        k=k,
        x=x,
        value=(eta / wronskian).real,
        dx=(eta_d / wronskian).real,
        iterations=it.iterations,
        wronskian_scale=wronskian,
        weyl_m=m_free / (jost_F * wronskian),
    )


def second_solution(problem: ProblemSpec, k: float, x: float) -> SolutionSample:
    """theta(k^2, x) with its x-derivative, for real k != 0."""
    solution = solve_second(problem, k, float(x))
    return SolutionSample(
        value=complex(solution.value[0]),
        dx=complex(solution.dx[0]),
        iterations_used=solution.iterations,
    )
