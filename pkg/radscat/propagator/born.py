"""Born series of the perturbed resolvent at real k.

R_H(k^2 + i0) = sum_n R_l (-q R_l)^n with the free resolvent kernel
R_l(k^2 + i0)(x, y) = phi_l(k^2, min) psi_l(k, max) = (i pi / 2) r_l(k; x, y) / k.
The nested integrals run over the Gauss-Legendre nodes of [0, X]; the free
kernel is semi-separable, so each application costs two cumulative sums.
"""

from __future__ import annotations

import logging
from typing import Optional

import numpy as np

from radscat.errors import DomainError
from radscat.logger import get_logger
from radscat.problem import ProblemSpec
from radscat.scattering.jost import jost_prefactor
from radscat.solutions import PanelGrid, solve_jost, solve_regular
from radscat.specfun.free import free_phi, free_psi

MAX_BORN_ORDER = 3
CONTRACTION_TARGET = 0.5
POWER_ITERATIONS = 4
K0_SCAN = np.geomspace(0.25, 400.0, 49)


def _check_k(k) -> float:
    k = complex(k)
    if k.imag != 0 or not k.real > 0:
        raise DomainError(f"The Born series is evaluated at real k > 0, got k={k}")
    return k.real


def free_resolvent(l: float, k: float, x, y) -> np.ndarray:
    """phi_l(k^2, min(x, y)) psi_l(k, max(x, y))."""
    k = _check_k(k)
    x, y = np.broadcast_arrays(np.asarray(x, float), np.asarray(y, float))
    lo, hi = np.minimum(x, y), np.maximum(x, y)
    return free_phi(l, k**2, lo)[0] * free_psi(l, k, hi)[0]


class _BornDiscretization:
    """Free blocks at the nodes of [0, X] with breakpoints at the given points."""

    def __init__(self, problem: ProblemSpec, k: float, points=()):
        end = problem.truncation_radius
        interior = [float(p) for p in points if 0 < p < end]
        grid = PanelGrid.build(
            end,
            k,
            breakpoints=list(problem.q.breakpoints) + interior,
            settings=problem.settings,
        )
        self.l = problem.l
        self.k = k
        self.nodes = grid.nodes.ravel()
        self.qw = problem.q(self.nodes) * grid.weights.ravel()
        self.phi = free_phi(self.l, k**2, self.nodes)[0]
        self.psi = free_psi(self.l, k, self.nodes)[0]

    def apply(self, w: np.ndarray) -> np.ndarray:
        """(R_l q w)(y_i) = sum_j R_l(y_i, y_j) q_j w_j dy_j."""
        qw = self.qw * w
        # inclusive suffix sums take the diagonal y_j = y_i
        lower = np.cumsum(self.phi * qw) - self.phi * qw
        upper = np.cumsum((self.psi * qw)[::-1])[::-1]
        return self.psi * lower + self.phi * upper

    def pair(self, a: float, w: np.ndarray) -> complex:
        """sum_j R_l(a, y_j) q_j w_j dy_j."""
        values = free_resolvent(self.l, self.k, a, self.nodes)
        return complex(np.sum(values * self.qw * w))


def born_terms(
    problem: ProblemSpec, k: float, x: float, y: float, n_max: int = MAX_BORN_ORDER
) -> np.ndarray:
    """Terms B_0, ..., B_{n_max} of the Born series at (x, y).

    B_n = (-1)^n int R_l(x, y_1) q(y_1) R_l(y_1, y_2) ... q(y_n) R_l(y_n, y).
    """
    k = _check_k(k)
    if n_max < 0:
        raise ValueError(f"n_max must be >= 0, got {n_max}")
    terms = np.zeros(n_max + 1, dtype=complex)
    terms[0] = complex(free_resolvent(problem.l, k, x, y))
    if n_max == 0 or problem.is_free or problem.truncation_radius == 0:
        return terms
    disc = _BornDiscretization(problem, k, points=(x, y))
    w = free_resolvent(problem.l, k, disc.nodes, y)
    for n in range(1, n_max + 1):
        terms[n] = (-1) ** n * disc.pair(x, w)
        w = disc.apply(w)
    return terms


def born_term(problem: ProblemSpec, n: int, k: float, x: float, y: float) -> complex:
    """n-th term of the Born series of the resolvent kernel."""
    return complex(born_terms(problem, k, x, y, n_max=n)[n])


def born_partial_sum(
    problem: ProblemSpec, n: int, k: float, x: float, y: float
) -> complex:
    """sum_{m <= n} B_m."""
    return complex(np.sum(born_terms(problem, k, x, y, n_max=n)))


def resolvent_kernel(problem: ProblemSpec, k: float, x: float, y: float) -> complex:
    """phi(k^2, min) f(k, max) / f(k) at real k > 0."""
    k = _check_k(k)
    lo, hi = min(x, y), max(x, y)
    regular = solve_regular(problem, k, lo)
    jost = solve_jost(problem, k, hi)
    denominator = jost_prefactor(problem.l, k) * complex(regular.jost_F)
    return complex(regular.value[0] * jost.value[0] / denominator)


def born_contraction_ratio(
    problem: ProblemSpec, k: float, iterations: int = POWER_ITERATIONS
) -> float:
    """Growth factor sup|R_l q w_{n+1}| / sup|w_n| of repeated Born steps.

    For l = 0 it is at most ||q||_1 / k since |R_0| <= 1/k.
    """
    k = _check_k(k)
    if problem.is_free or problem.truncation_radius == 0:
        return 0.0
    disc = _BornDiscretization(problem, k)
    w = np.ones(len(disc.nodes), dtype=complex)
    ratio = 0.0
    for _ in range(iterations):
        size = np.max(np.abs(w))
        if size == 0:
            return 0.0
        w = disc.apply(w / size)
        ratio = float(np.max(np.abs(w)))
    return ratio


def default_k0(
    problem: ProblemSpec,
    k_scan=K0_SCAN,
    logger: Optional[logging.Logger] = None,
) -> float:
    """Twice the smallest scanned k whose Born contraction ratio is below 1/2."""
    if logger is None:
        logger = get_logger("default_k0")
    for k in k_scan:
        ratio = born_contraction_ratio(problem, k)
        if ratio < CONTRACTION_TARGET:
            logger.debug(f"Born contraction ratio {ratio:.3f} at k={k:.4g}")
            return float(2 * k)
    logger.warning(
        f"Born contraction ratio of {problem} stays above {CONTRACTION_TARGET}"
        f" up to k={k_scan[-1]:g}; using k0={2 * k_scan[-1]:g}"
    )
    return float(2 * k_scan[-1])
