"""Weyl-Titchmarsh m-function on the real axis."""

from __future__ import annotations

import logging
from typing import Optional

from radscat.errors import DomainError
from radscat.logger import get_logger
from radscat.problem import ProblemSpec
from radscat.scattering.jost import jost_prefactor
from radscat.solutions import second_normalization

# below this |k| the ratio m = -g/f is ill-conditioned near a resonance
NEAR_ZERO_K = 1e-4


def weyl_m(
    problem: ProblemSpec, k: float, logger: Optional[logging.Logger] = None
) -> complex:
    """m = -g(k)/f(k) for real k != 0.

    With theta the real second solution equal to theta_l / W(theta_l, phi)
    beyond the truncation radius, m = m_l(k^2) / (F(k) W(theta_l, phi)). For
    k < 0 this is the lower-side value conj(m(|k|)), so Im m |f(k)|^2 = k.
    """
    if logger is None:
        logger = get_logger("weyl_m")
    k = complex(k)
    if k.imag != 0 or k == 0:
        raise DomainError(f"weyl_m is evaluated at real k != 0, got k={k}")
    negative = k.real < 0
    k = abs(k.real)
    if k < NEAR_ZERO_K:
        logger.warning(
            f"weyl_m at |k|={k:.2e} is in the near-zero region and may be"
            " ill-conditioned"
        )
    wronskian, jost_F, m_free = second_normalization(problem, k, logger=logger)
    value = complex(m_free / (jost_F * wronskian))
    return value.conjugate() if negative else value


def g_function(
    problem: ProblemSpec, k: float, logger: Optional[logging.Logger] = None
) -> complex:
    """g(k) = W(f(k, .), theta(k^2, .)) = -m f(k) for real k, g(-k) = conj g(k)."""
    negative = complex(k).real < 0
    k = abs(complex(k).real)
    wronskian, _, m_free = second_normalization(problem, k, logger=logger)
    value = complex(-m_free * jost_prefactor(problem.l, k) / wronskian)
    return value.conjugate() if negative else value
