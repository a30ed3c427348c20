"""Numerical certificate of the t^{-1/2} decay of the continuous kernel."""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Optional

import numpy as np

from radscat.config.main import KernelSettings
from radscat.errors import DomainError
from radscat.logger import get_logger
from radscat.problem import ProblemSpec
from radscat.propagator.cutoff import CutoffSpec
from radscat.propagator.kernels import kernel_series, require_no_resonance
from radscat.tabular.kernel import DecayTable

TARGET_EXPONENT = -0.5
EXPONENT_TOL = 0.05
# relative spread of sqrt(t) M(t) over the last decade of times
SPREAD_TOL = 0.25
MIN_TIMES = 3


@dataclass(frozen=True)
class DecayReport:
    """M(t) = sup over the grid of |K(t, x, y)| and the fitted decay."""

    t: np.ndarray
    M: np.ndarray
    exponent: float
    spread: float
    route: str
    k0: Optional[float] = None

    @property
    def sqrt_t_M(self) -> np.ndarray:
        return np.sqrt(self.t) * self.M

    @property
    def sup_sqrt_t_M(self) -> float:
        return float(np.max(self.sqrt_t_M))

    @property
    def passed(self) -> bool:
        return bool(
            abs(self.exponent - TARGET_EXPONENT) <= EXPONENT_TOL
            and self.spread < SPREAD_TOL
            and np.isfinite(self.sup_sqrt_t_M)
        )

    def to_table(self) -> DecayTable:
        return DecayTable.from_records(
            [
                {"t": float(t), "M": float(m), "sqrt_t_M": float(s)}
                for t, m, s in zip(self.t, self.M, self.sqrt_t_M)
            ]
        )

    def to_dict(self) -> dict:
        return {
            "route": self.route,
            "k0": self.k0,
            "t": self.t.tolist(),
            "M": self.M.tolist(),
            "sqrt_t_M": self.sqrt_t_M.tolist(),
            "sup_sqrt_t_M": self.sup_sqrt_t_M,
            "fitted_exponent": self.exponent,
            "spread": self.spread,
            "pass": self.passed,
        }


def _last_decade_spread(t: np.ndarray, values: np.ndarray) -> float:
    tail = values[t >= t[-1] / 10]
    return float((np.max(tail) - np.min(tail)) / np.mean(tail))


def decay_certificate(
    problem: ProblemSpec,
    t_list,
    x,
    y=None,
    settings: Optional[KernelSettings] = None,
    cutoff: Optional[CutoffSpec] = None,
    n_jobs: int = 1,
    logger: Optional[logging.Logger] = None,
) -> DecayReport:
    """Fit log M(t) against log t for the kernel of e^{-itH} P_c(H).

    The free problem uses the closed form; otherwise the full route is used.
    Resonant, near-resonant and inconclusive problems are refused.
    """
    if logger is None:
        logger = get_logger("decay_certificate")
    t_list = np.sort(np.asarray(t_list, dtype=float))
    if len(t_list) < MIN_TIMES:
        raise DomainError(f"The decay fit needs at least {MIN_TIMES} times")
    if np.any(t_list <= 0):
        raise DomainError("The decay certificate is computed for t > 0")
    y = x if y is None else y

    require_no_resonance(problem, settings, refuse_near=True, logger=logger)
    route = "free" if problem.is_free else "full"
    grids = kernel_series(
        problem, route, t_list, x, y, settings, cutoff, n_jobs, logger
    )
    sup = np.array([grid.sup() for grid in grids])
    exponent = float(np.polyfit(np.log(t_list), np.log(sup), 1)[0])
    spread = _last_decade_spread(t_list, np.sqrt(t_list) * sup)
    k0 = None if grids[0].cutoff is None else grids[0].cutoff.k0
    report = DecayReport(t_list, sup, exponent, spread, route, k0)
    logger.info(
        f"Decay of {problem}: exponent {exponent:.4f},"
        f" sup sqrt(t) M(t) = {report.sup_sqrt_t_M:.6g}, pass={report.passed}"
    )
    return report
