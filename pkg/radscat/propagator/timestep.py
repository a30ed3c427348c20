"""Crank-Nicolson reference for i psi_t = H psi on a truncated half line."""

from __future__ import annotations

import logging
import math
from typing import Callable, Optional

import numpy as np
from scipy import sparse
from scipy.interpolate import CubicSpline
from scipy.sparse.linalg import splu

from radscat.errors import DomainError
from radscat.logger import get_logger
from radscat.problem import ProblemSpec

DEFAULT_LENGTH = 60.0
DEFAULT_STEP = 0.01
DEFAULT_DT = 0.0025
# Gauss-Legendre nodes per half cell for the cell averages of q
AVERAGE_NODES = 4


def _aligned_step(problem: ProblemSpec, step: float, length: float) -> float:
    """Largest h <= step with the first breakpoint of q on a grid node."""
    points = [p for p in problem.q.breakpoints if 0 < p < length]
    if not points:
        return step
    first = min(points)
    return first / math.ceil(first / step - 1e-9)


def _cell_average(problem: ProblemSpec, x: np.ndarray, h: float) -> np.ndarray:
    """Mean of q over [x - h/2, x + h/2], one Gauss rule per half cell."""
    ref_nodes, ref_weights = np.polynomial.legendre.leggauss(AVERAGE_NODES)
    offsets = np.concatenate([(ref_nodes - 1) * h / 4, (ref_nodes + 1) * h / 4])
    weights = np.concatenate([ref_weights, ref_weights]) / 4
    points = x[:, None] + offsets[None, :]
    return problem.q(points.ravel()).reshape(points.shape) @ weights


def _hamiltonian(problem: ProblemSpec, x: np.ndarray, h: float) -> sparse.csc_matrix:
    """Second-order -d^2/dx^2 plus l(l+1)/x^2 + <q> with psi = 0 at both walls."""
    n = len(x)
    off = np.full(n - 1, -1.0)
    laplacian = sparse.diags([off, np.full(n, 2.0), off], [-1, 0, 1])
    potential = problem.l * (problem.l + 1) / x**2 + _cell_average(problem, x, h)
    return (laplacian / h**2 + sparse.diags(potential)).tocsc()


def _propagate(hamiltonian, psi: np.ndarray, t: float, n_steps: int) -> np.ndarray:
    dt = t / n_steps
    identity = sparse.identity(hamiltonian.shape[0], format="csc")
    implicit = splu((identity + 0.5j * dt * hamiltonian).tocsc())
    explicit = (identity - 0.5j * dt * hamiltonian).tocsr()
    for _ in range(n_steps):
        psi = implicit.solve(explicit @ psi)
    return psi


def _evolve_on_grid(
    problem: ProblemSpec,
    psi0: Callable[[np.ndarray], np.ndarray],
    t: float,
    h: float,
    n: int,
    dt: float,
) -> np.ndarray:
    """psi(t) at the interior nodes h, 2h, ..., (n - 1) h, extrapolated in dt."""
    grid = h * np.arange(1, n)
    hamiltonian = _hamiltonian(problem, grid, h)
    start = np.asarray(psi0(grid), dtype=complex)
    n_steps = max(1, math.ceil(t / dt))
    coarse = _propagate(hamiltonian, start, t, n_steps)
    fine = _propagate(hamiltonian, start, t, 2 * n_steps)
    return (4 * fine - coarse) / 3


def _interpolate(
    nodes: np.ndarray, values: np.ndarray, x: np.ndarray, knots: list[int]
) -> np.ndarray:
    """Cubic splines between consecutive knot indices (psi'' jumps there)."""
    result = np.empty(len(x), dtype=complex)
    for start, stop in zip(knots[:-1], knots[1:]):
        piece = slice(start, stop + 1)
        inside = (x >= nodes[start]) & (x <= nodes[stop])
        if not np.any(inside):
            continue
        real = CubicSpline(nodes[piece], values[piece].real)(x[inside])
        imag = CubicSpline(nodes[piece], values[piece].imag)(x[inside])
        result[inside] = real + 1j * imag
    return result


def crank_nicolson_evolve(
    problem: ProblemSpec,
    psi0: Callable[[np.ndarray], np.ndarray],
    t: float,
    x,
    length: float = DEFAULT_LENGTH,
    step: float = DEFAULT_STEP,
    dt: float = DEFAULT_DT,
    logger: Optional[logging.Logger] = None,
) -> np.ndarray:
    """(e^{-itH} psi0)(x) with Dirichlet walls at 0 and ``length``.

    The step is shrunk so that the first jump of q sits on a node, q enters as
    its cell averages, and the O(h^2) and O(dt^2) errors are removed by
    Richardson extrapolation over the grids h, h/2 and the steps dt, dt/2.
    """
    if logger is None:
        logger = get_logger("crank_nicolson_evolve")
    x = np.atleast_1d(np.asarray(x, dtype=float))
    if t <= 0:
        raise DomainError(f"The time-stepping oracle runs forward, got t={t}")
    h = _aligned_step(problem, step, length)
    n = int(round(length / h))
    wall = n * h
    if np.any(x <= 0) or np.any(x >= min(length, wall)):
        raise DomainError(f"Evaluation points must lie in (0, {length})")

    knots = [0, n]
    for point in problem.q.breakpoints:
        if not 0 < point < wall:
            continue
        index = int(round(point / h))
        if abs(index * h - point) > 1e-9 * point:
            logger.warning(
                f"Breakpoint {point:g} of {problem.q} is off the grid (h={h:.3g}),"
                " the oracle is only first order near it"
            )
        elif index not in knots:
            knots.append(index)
    logger.debug(
        f"Crank-Nicolson for {problem}: {n - 1} and {2 * n - 1} points,"
        f" dt={dt:g} to t={t:g}"
    )

    coarse = _evolve_on_grid(problem, psi0, t, h, n, dt)
    fine = _evolve_on_grid(problem, psi0, t, h / 2, 2 * n, dt)
    psi = (4 * fine[1::2] - coarse) / 3

    nodes = h * np.arange(n + 1)
    values = np.concatenate([[0.0], psi, [0.0]])
    return _interpolate(nodes, values, x, sorted(knots))
