"""Jost function f(k) and normalized Jost function F(k)."""

from __future__ import annotations

import cmath
import logging
import math
from dataclasses import dataclass
from typing import Literal, Optional

import numpy as np

from radscat.errors import DomainError
from radscat.logger import get_logger
from radscat.problem import ProblemSpec
from radscat.solutions import solve_jost, solve_regular
from radscat.specfun.free import free_jost_function

FRoute = Literal["integral", "wronskian", "jost"]
F_ROUTES = ("integral", "wronskian", "jost")

# matching points as fractions of the truncation radius
MATCHING_FRACTIONS = (0.5, 0.75, 1.0)
MATCHING_SPREAD_TOL = 1e-8
# |F(k)| below this on the real axis is reported as ill-conditioned
SMALL_F = 1e-8


@dataclass(frozen=True)
class JostEvaluation:
    """Wronskian values W(f(k, .), phi(k^2, .)) at the matching points."""

    k: complex
    matching_points: tuple[float, ...]
    values: tuple[complex, ...]

    @property
    def value(self) -> complex:
        return complex(np.mean(self.values))

    @property
    def spread(self) -> float:
        """Largest relative deviation of the matching values from their mean."""
        mean = self.value
        return max(abs(v - mean) for v in self.values) / max(abs(mean), 1e-300)


def _check_k(k: complex) -> complex:
    k = complex(k)
    if k == 0:
        raise DomainError("The Jost function is singular at k = 0")
    if k.imag < 0:
        raise DomainError(f"The Jost function needs Im k >= 0, got k={k}")
    return k


def jost_prefactor(l: float, k: complex) -> complex:
    """f_l(k) = exp(i pi l / 2) k^(-l), so that f(k) = f_l(k) F(k)."""
    return cmath.exp(0.5j * math.pi * l) * complex(k) ** (-l)


def matching_points(problem: ProblemSpec) -> tuple[float, ...]:
    end = problem.truncation_radius
    if end == 0:
        return (0.5, 1.0, 2.0)
    return tuple(fraction * end for fraction in MATCHING_FRACTIONS)


def evaluate_jost(
    problem: ProblemSpec, k: complex, logger: Optional[logging.Logger] = None
) -> JostEvaluation:
    """Evaluate f(k) = W(f(k, .), phi(k^2, .)) at three matching points."""
    if logger is None:
        logger = get_logger("evaluate_jost")
    k = _check_k(k)
    points = matching_points(problem)
    if problem.is_free:
        value = free_jost_function(problem.l, k)
        return JostEvaluation(k, points, (value,) * len(points))

    regular = solve_regular(problem, k, points)
    jost = solve_jost(problem, k, points)
    values = tuple(
        complex(f * dphi - df * phi)
        for f, df, phi, dphi in zip(jost.value, jost.dx, regular.value, regular.dx)
    )
    evaluation = JostEvaluation(k, points, values)
    if evaluation.spread > MATCHING_SPREAD_TOL:
        logger.warning(
            f"Jost function at k={k} depends on the matching point"
            f" (relative spread {evaluation.spread:.2e})"
        )
    if k.imag == 0 and abs(evaluation.value) * abs(k) ** problem.l < SMALL_F:
        logger.warning(f"|F(k)| is close to zero on the real axis at k={k}")
    return evaluation


def jost_function(
    problem: ProblemSpec, k: complex, logger: Optional[logging.Logger] = None
) -> complex:
    """Jost function f(k) for Im k >= 0, k != 0."""
    return evaluate_jost(problem, k, logger=logger).value


def normalized_jost_F(
    problem: ProblemSpec,
    k: complex,
    route: FRoute = "integral",
    logger: Optional[logging.Logger] = None,
) -> complex:
    """F(k) = exp(-i pi l / 2) k^l f(k).

    Parameters
    ----------
    route : {"integral", "wronskian", "jost"}
        "integral" uses F = 1 + int_0^inf psi_l q phi and also works at k = 0,
        "wronskian" goes through jost_function, "jost" uses
        F = 1 + exp(-i pi l/2) k^l int_0^inf phi_l q f
    """
    if route not in F_ROUTES:
        raise ValueError(f"Unknown route {route!r}, expected one of {F_ROUTES}")
    k = complex(k)
    if k.imag < 0:
        raise DomainError(f"F(k) is evaluated for Im k >= 0, got k={k}")
    if problem.is_free:
        return 1.0 + 0j
    point = problem.truncation_radius
    if route == "integral":
        return complex(solve_regular(problem, k, point).jost_F)
    if route == "wronskian":
        return jost_function(problem, k, logger=logger) / jost_prefactor(problem.l, k)
    _check_k(k)
    return complex(solve_jost(problem, k, point).jost_F)


def normalized_jost_F_dk(problem: ProblemSpec, k: complex) -> complex:
    """F'(k) from the differentiated integral representation, k != 0."""
    k = complex(k)
    if k == 0:
        raise DomainError("F'(k) is evaluated at k != 0")
    if k.imag < 0:
        raise DomainError(f"F'(k) is evaluated for Im k >= 0, got k={k}")
    if problem.is_free:
        return 0j
    return complex(
        solve_regular(problem, k, problem.truncation_radius, with_dk=True).jost_F_dk
    )
