"""Negative eigenvalues -kappa_n^2 and their norming constants."""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from typing import Optional

import numpy as np
from joblib import Parallel, delayed
from scipy import integrate, optimize

from radscat.errors import NonConvergenceError
from radscat.logger import get_logger
from radscat.problem import ProblemSpec
from radscat.scattering.jost import jost_prefactor
from radscat.solutions import solve_regular
from radscat.specfun.free import free_jost, free_psi

N_SCAN = 1000
# kappa_max = sqrt(sup q_-) + KAPPA_PAD
KAPPA_PAD = 1.0
ROOT_XTOL = 1e-14
ROOT_RTOL = 4 * np.finfo(float).eps
QUAD_LIMIT = 200


@dataclass(frozen=True)
class BoundState:
    """Eigenvalue -kappa^2 with norming constant gamma = 1/||phi||^2."""

    kappa: float
    gamma: float
    F_dk: complex
    gamma_residue: Optional[float] = None

    @property
    def energy(self) -> float:
        return -self.kappa**2


def F_imaginary_axis(problem: ProblemSpec, kappa: float) -> float:
    """F(i kappa), which is real for kappa > 0."""
    jost_F = solve_regular(problem, 1j * kappa, problem.truncation_radius).jost_F
    return float(jost_F.real)


def kappa_max(problem: ProblemSpec) -> float:
    """Upper end of the scan; eigenvalues satisfy kappa^2 <= sup q_-."""
    return math.sqrt(problem.q.sup_negative_part) + KAPPA_PAD


def _settled(values: np.ndarray) -> bool:
    """F(i kappa) is positive at the end of the scan and still moving toward 1."""
    return bool(values[-1] > 0 and abs(values[-1] - 1) <= abs(values[-2] - 1))


def norming_constant(problem: ProblemSpec, kappa: float) -> float:
    """gamma = 1 / int_0^inf phi(-kappa^2, x)^2 dx by quadrature."""
    end = problem.truncation_radius
    regular = solve_regular(problem, 1j * kappa, end)
    inside = float(regular.grid.integral(np.abs(regular.node_values) ** 2))
    # beyond X the eigenfunction is -psi_l(i kappa, x) int_0^X phi_l q phi
    tail, _ = integrate.quad(
        lambda x: abs(complex(free_psi(problem.l, 1j * kappa, x)[0])) ** 2,
        end,
        np.inf,
        limit=QUAD_LIMIT,
    )
    return 1.0 / (inside + abs(regular.inner) ** 2 * tail)


def norming_constant_residue(problem: ProblemSpec, kappa: float) -> float:
    """gamma from the residue relation d/dk f(i kappa) = 2 i kappa g(i kappa) / gamma.

    At a zero of f, f(i kappa, x) = c phi(-kappa^2, x) and g(i kappa) = -c.
    """
    k = 1j * kappa
    end = problem.truncation_radius
    regular = solve_regular(problem, k, end, with_dk=True)
    c = complex(free_jost(problem.l, k, end)[0]) / regular.value[0]
    f_dot = jost_prefactor(problem.l, k) * regular.jost_F_dk
    return float((-2j * kappa * c / f_dot).real)


def _refine(problem: ProblemSpec, lo: float, hi: float) -> float:
    try:
        root, info = optimize.brentq(
            lambda kappa: F_imaginary_axis(problem, kappa),
            lo,
            hi,
            xtol=ROOT_XTOL,
            rtol=ROOT_RTOL,
            full_output=True,
        )
    except (RuntimeError, ValueError) as exception:
        raise NonConvergenceError(
            f"Root refinement of F(i kappa) failed on [{lo}, {hi}]: {exception}",
            {"bracket": [lo, hi]},
        ) from exception
    if not info.converged:
        raise NonConvergenceError(
            f"Root refinement of F(i kappa) did not converge on [{lo}, {hi}]",
            {"bracket": [lo, hi], "flag": info.flag},
        )
    return float(root)


def bound_states(
    problem: ProblemSpec,
    n_scan: int = N_SCAN,
    with_residue: bool = True,
    n_jobs: int = 1,
    logger: Optional[logging.Logger] = None,
) -> list[BoundState]:
    """Zeros i kappa_n of F on the positive imaginary axis, largest kappa first.

    F(i kappa) is scanned on linspace(kappa_max/n_scan, kappa_max, n_scan) and
    each sign change is refined with Brent's method.
    """
    if logger is None:
        logger = get_logger("bound_states")
    if problem.is_free or problem.q.sup_negative_part == 0:
        return []
    top = kappa_max(problem)
    kappas = np.linspace(top / n_scan, top, n_scan)
    values = np.asarray(
        Parallel(n_jobs=n_jobs)(
            delayed(F_imaginary_axis)(problem, kappa) for kappa in kappas
        )
    )
    if not _settled(values):
        logger.warning(
            f"F(i kappa_max) = {values[-1]:.3g} is not settling toward 1"
            f" (kappa_max={top:.3g}); bound states may be missed"
        )

    roots = []
    for i in range(n_scan - 1):
        if values[i] == 0:
            roots.append(float(kappas[i]))
        elif values[i] * values[i + 1] < 0:
            roots.append(_refine(problem, kappas[i], kappas[i + 1]))
    if values[-1] == 0:
        roots.append(float(kappas[-1]))

    states = []
    for kappa in sorted(roots, reverse=True):
        regular = solve_regular(
            problem, 1j * kappa, problem.truncation_radius, with_dk=True
        )
        if abs(regular.jost_F_dk) < 1e-10:
            logger.warning(f"Zero of F at kappa={kappa} may not be simple")
        state = BoundState(
            kappa=kappa,
            gamma=norming_constant(problem, kappa),
            F_dk=complex(regular.jost_F_dk),
            gamma_residue=(
                norming_constant_residue(problem, kappa) if with_residue else None
            ),
        )
        logger.debug(
            f"Bound state kappa={kappa:.12g}, energy={state.energy:.12g},"
            f" gamma={state.gamma:.6g}"
        )
        states.append(state)
    return states
