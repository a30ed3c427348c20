"""Independent ODE-integration oracle for the regular and Jost solutions."""

from __future__ import annotations

from typing import Literal, Optional

import numpy as np
from scipy.integrate import solve_ivp

from radscat.errors import DomainError, NonConvergenceError
from radscat.problem import ProblemSpec, SolutionSample
from radscat.specfun.free import canonical_root, free_jost, free_phi

Direction = Literal["forward_regular", "backward_jost"]
DIRECTIONS = ("forward_regular", "backward_jost")

ORACLE_METHOD = "DOP853"
ORACLE_RTOL = 1e-12
ORACLE_ATOL = 1e-14
# relative step of the central difference used for the residual
RESIDUAL_STEP = 1e-5


def default_start(k: complex) -> float:
    """Starting point x0 = 1e-4 min(1, 1/(1+|k|)) of the forward integration."""
    return 1e-4 * min(1.0, 1.0 / (1.0 + abs(k)))


def _rhs_factory(problem: ProblemSpec, z: complex):
    centrifugal = problem.l * (problem.l + 1)
    q = problem.q

    def rhs(x, y):
        return np.array([y[1], (centrifugal / x**2 + q(x) - z) * y[0]])

    return rhs


def _segments(problem: ProblemSpec, start: float, stop: float) -> list[float]:
    lo, hi = min(start, stop), max(start, stop)
    inner = sorted(b for b in problem.q.breakpoints if lo < b < hi)
    points = [lo] + inner + [hi]
    return points if start < stop else points[::-1]


def _integrate(problem, z, y0, start, x_eval):
    """Integrate piecewise between breakpoints, returning states at x_eval."""
    rhs = _rhs_factory(problem, z)
    forward = bool(np.all(x_eval > start))
    order = np.argsort(x_eval) if forward else np.argsort(-x_eval)
    stop = x_eval[order[-1]]
    states = np.empty((len(x_eval), 2), dtype=complex)
    residuals = np.zeros(len(x_eval))
    centrifugal = problem.l * (problem.l + 1)

    state = np.asarray(y0, dtype=complex)
    edges = _segments(problem, start, stop)
    for seg_start, seg_stop in zip(edges[:-1], edges[1:]):
        lo, hi = min(seg_start, seg_stop), max(seg_start, seg_stop)
        in_segment = [i for i in order if lo <= x_eval[i] <= hi]
        sol = solve_ivp(
            rhs,
            (seg_start, seg_stop),
            state,
            method=ORACLE_METHOD,
            rtol=ORACLE_RTOL,
            atol=ORACLE_ATOL,
            dense_output=True,
        )
        if not sol.success:
            raise NonConvergenceError(
                f"ODE integration failed on [{lo:g}, {hi:g}]: {sol.message}"
                " (raise the starting point for large l)",
                {"segment": [lo, hi], "message": sol.message},
            )
        for i in in_segment:
            x = x_eval[i]
            states[i] = sol.sol(x)
            step = min(RESIDUAL_STEP * x, (x - lo) / 2, (hi - x) / 2)
            if step > 0:
                second = (sol.sol(x + step)[1] - sol.sol(x - step)[1]) / (2 * step)
                coef = centrifugal / x**2 + problem.q(x) - z
                expected = coef * states[i, 0]
                scale = abs(coef) * abs(states[i, 0]) + abs(states[i, 1]) / x
                residuals[i] = abs(second - expected) / max(scale, 1e-300)
        state = sol.y[:, -1]
    return states, residuals


def ode_oracle(
    problem: ProblemSpec,
    z: complex,
    direction: Direction,
    x_eval,
    start: Optional[float] = None,
):
    """Solve -u'' + (l(l+1)/x^2 + q) u = z u with an adaptive Runge-Kutta method.

    Parameters
    ----------
    problem : ProblemSpec
        Angular momentum and potential
    z : complex
        Energy; the backward direction uses k = sqrt(z) with Im k >= 0
    direction : {"forward_regular", "backward_jost"}
        "forward_regular" starts at x0 << 1 from phi_l at the shifted energy
        z - q(x0); "backward_jost" starts at x_max = max(X, x_eval) from f_l
    x_eval : float or array
        Evaluation points
    start : float, optional
        Overrides x0 (forward) or x_max (backward)

    Returns
    -------
    SolutionSample or list of SolutionSample
        One sample per point, with the relative ODE residual in ``extra``
    """
    if direction not in DIRECTIONS:
        raise ValueError(f"Unknown direction {direction!r}, expected {DIRECTIONS}")
    scalar = np.ndim(x_eval) == 0
    x_eval = np.atleast_1d(np.asarray(x_eval, dtype=float))
    if np.any(x_eval <= 0):
        raise DomainError("The ODE oracle evaluates at x > 0 only")
    z = complex(z)
    k = canonical_root(z)
    l = problem.l

    if direction == "forward_regular":
        x0 = default_start(k) if start is None else float(start)
        if np.any(x_eval <= x0):
            raise DomainError(f"Evaluation points must exceed the start x0={x0:g}")
        value, deriv = free_phi(l, z - problem.q(x0), x0)
    else:
        if k == 0:
            raise DomainError("The Jost solution is singular at k = 0")
        x0 = (
            max(problem.truncation_radius, float(np.max(x_eval)))
            if start is None
            else float(start)
        )
        if np.any(x_eval > x0):
            raise DomainError(f"Evaluation points must not exceed x_max={x0:g}")
        value, deriv = free_jost(l, k, x0)

    # the equation is linear: integrate from a unit-size state and rescale
    norm = max(abs(complex(value)), abs(complex(deriv)) * x0)
    y0 = np.array([complex(value), complex(deriv)]) / norm
    at_start = x_eval == x0
    states = np.empty((len(x_eval), 2), dtype=complex)
    residuals = np.zeros(len(x_eval))
    states[at_start] = y0
    if not at_start.all():
        states[~at_start], residuals[~at_start] = _integrate(
            problem, z, y0, x0, x_eval[~at_start]
        )
    states *= norm

    samples = [
        SolutionSample(
            value=complex(u),
            dx=complex(du),
            extra={"residual": float(res), "direction": direction, "start": x0},
        )
        for (u, du), res in zip(states, residuals)
    ]
    return samples[0] if scalar else samples
