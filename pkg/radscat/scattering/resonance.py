"""Zero-energy resonance classification."""

from __future__ import annotations

import logging
from dataclasses import dataclass
from enum import Enum
from typing import Callable, Optional

import numpy as np
from scipy import optimize

from radscat.errors import DomainError, NonConvergenceError
from radscat.logger import get_logger
from radscat.problem import ProblemSpec
from radscat.solutions import ode_oracle, solve_regular
from radscat.specfun.free import c_l, free_phi, free_theta

RESONANCE_THRESHOLD = 1e-4
# |F(0)| / sup|F| below this is a zero of F, between it and the threshold the
# problem is near-resonant
RESONANT_RTOL = 1e-8
# momenta on which sup_k |F(k)| is sampled, F -> 1 beyond them
SUP_MOMENTA = np.geomspace(1e-2, 1e2, 33)
COUPLING_XTOL = 1e-12


class ResonanceStatus(str, Enum):
    """Behaviour of F at k = 0."""

    NONE = "none"
    RESONANT = "resonant"
    NEAR_RESONANT = "near_resonant"
    INCONCLUSIVE = "inconclusive"


@dataclass(frozen=True)
class ResonanceReport:
    """Both zero-energy criteria and the resulting status.

    ``growth_ratio`` compares the x^(l+1) and x^(-l) components of phi(0, x)
    at x_far = max(1, X) (threshold sup|F|)^(-1/(2l+1)), from an independent
    ODE integration; it is below 1 when phi(0, .) does not grow like x^(l+1).
    """

    status: ResonanceStatus
    F0: complex
    growth_ratio: float
    x_far: float
    threshold: float
    sup_F: float = 1.0

    @property
    def abs_F0(self) -> float:
        return abs(self.F0)

    @property
    def relative_F0(self) -> float:
        return self.abs_F0 / self.sup_F

    def to_dict(self) -> dict:
        return {
            "status": self.status.value,
            "abs_F0": self.abs_F0,
            "sup_F": self.sup_F,
            "growth_ratio": self.growth_ratio,
            "x_far": self.x_far,
            "threshold": self.threshold,
        }


def zero_energy_growth(problem: ProblemSpec, threshold: float) -> tuple[float, float]:
    """|alpha phi_l(0, x)| / |beta theta_l(0, x)| at x_far.

    phi(0, .) = alpha phi_l + beta theta_l beyond the matching point.
    """
    l = problem.l
    x_match = max(1.0, problem.truncation_radius)
    x_far = x_match * threshold ** (-1.0 / (2 * l + 1))
    sample = ode_oracle(problem, 0.0, "forward_regular", x_match)
    phi_l, dphi_l = (complex(v) for v in free_phi(l, 0.0, x_match))
    theta_l, dtheta_l = (complex(v) for v in free_theta(l, 0.0, x_match))
    # W(theta_l, phi_l) = 1
    alpha = theta_l * sample.dx - dtheta_l * sample.value
    beta = -(phi_l * sample.dx - dphi_l * sample.value)
    growing = abs(alpha) * c_l(l) * x_far ** (l + 1)
    bounded = abs(beta) * x_far ** (-l) / ((2 * l + 1) * c_l(l))
    if bounded == 0:
        return float("inf"), x_far
    return growing / bounded, x_far


def sup_jost_F(problem: ProblemSpec, F0: Optional[complex] = None) -> float:
    """sup_k |F(k)| over real k >= 0, at least 1 since F(k) -> 1."""
    if F0 is None:
        F0 = solve_regular(problem, 0.0, problem.truncation_radius).jost_F
    values = [abs(F0), 1.0]
    for k in SUP_MOMENTA:
        values.append(abs(solve_regular(problem, k, problem.truncation_radius).jost_F))
    return float(max(values))


def resonance_status(
    problem: ProblemSpec,
    threshold: float = RESONANCE_THRESHOLD,
    logger: Optional[logging.Logger] = None,
) -> ResonanceReport:
    """Classify k = 0 from |F(0)| / sup|F| and the growth of phi(0, x).

    Both criteria must agree that F(0) is below ``threshold`` (relative to
    sup|F|), otherwise the status is inconclusive. Below RESONANT_RTOL F(0)
    is taken as zero.
    """
    if logger is None:
        logger = get_logger("resonance_status")
    if problem.is_free:
        return ResonanceReport(
            ResonanceStatus.NONE, 1.0 + 0j, float("inf"), 1.0, threshold
        )

    F0 = complex(solve_regular(problem, 0.0, problem.truncation_radius).jost_F)
    sup_F = sup_jost_F(problem, F0)
    ratio, x_far = zero_energy_growth(problem, threshold * sup_F)
    relative = abs(F0) / sup_F
    small_F = relative < threshold
    bounded = ratio < 1
    if small_F != bounded:
        status = ResonanceStatus.INCONCLUSIVE
        logger.warning(
            f"Zero-energy criteria disagree for {problem}: |F(0)|={abs(F0):.3e}"
            f" (sup|F|={sup_F:.3g}), growth ratio {ratio:.3e} at x={x_far:.3g}"
        )
    elif small_F and relative < RESONANT_RTOL:
        status = ResonanceStatus.RESONANT
    elif small_F:
        status = ResonanceStatus.NEAR_RESONANT
        logger.warning(
            f"{problem} is near a zero-energy resonance: |F(0)|={abs(F0):.3e}"
            f" (sup|F|={sup_F:.3g})"
        )
    else:
        status = ResonanceStatus.NONE
    return ResonanceReport(status, F0, float(ratio), float(x_far), threshold, sup_F)


def resonant_coupling(
    family: Callable[[float], ProblemSpec],
    lo: float,
    hi: float,
    xtol: float = COUPLING_XTOL,
    logger: Optional[logging.Logger] = None,
) -> float:
    """Parameter in [lo, hi] at which F(0) of ``family(parameter)`` changes sign.

    ``family`` maps a coupling (a well depth, say) to a problem with a real
    potential, so that F(0) is real.
    """
    if logger is None:
        logger = get_logger("resonant_coupling")

    def F0(parameter: float) -> float:
        problem = family(parameter)
        return float(solve_regular(problem, 0.0, problem.truncation_radius).jost_F.real)

    F_lo, F_hi = F0(lo), F0(hi)
    if np.sign(F_lo) == np.sign(F_hi):
        raise DomainError(
            f"F(0) does not change sign on [{lo}, {hi}]",
            {"bracket": [lo, hi], "F0": [F_lo, F_hi]},
        )
    try:
        root, info = optimize.brentq(F0, lo, hi, xtol=xtol, full_output=True)
    except (RuntimeError, ValueError) as exception:
        raise NonConvergenceError(
            f"Bisection of F(0) failed on [{lo}, {hi}]: {exception}",
            {"bracket": [lo, hi]},
        ) from exception
    if not info.converged:
        raise NonConvergenceError(
            f"Bisection of F(0) did not converge on [{lo}, {hi}]",
            {"bracket": [lo, hi], "flag": info.flag},
        )
    logger.info(f"F(0) changes sign at coupling {root:.12g}")
    return float(root)
