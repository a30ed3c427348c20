"""Sampled checks of the solution and Jost-function estimates.

A bound check compares an observed quantity with its envelope on a log grid
in (k, x). The constant is fitted on a coarse grid and asserted on a refined
grid (which contains the coarse one) with a relative slack. A limit check
evaluates a sequence that must tend to zero.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable, Optional

import numpy as np

from radscat.config.main import VerifySettings
from radscat.errors import AccuracyLossError, DomainError, NonConvergenceError
from radscat.logger import get_logger
from radscat.problem import ProblemSpec
from radscat.scattering.jost import normalized_jost_F, normalized_jost_F_dk
from radscat.solutions import solve_jost, solve_regular
from radscat.specfun.bessel import bessel, bessel_dz
from radscat.specfun.free import (
    free_h,
    free_h_dk,
    free_jost,
    free_phi,
    free_phi_dk,
    free_psi,
    free_psi_dk,
    green_free,
    green_free_dk,
    scaled_green_dk,
    scaled_green_dk_leading,
)
from radscat.tabular.checks import (
    STATUS_FAIL,
    STATUS_INCONCLUSIVE,
    STATUS_PASS,
    STATUS_SKIPPED,
)

K_RANGE = (1e-3, 1e3)
X_RANGE = (1e-2, 50.0)
NEAR_ZERO_K_RANGE = (1e-3, 1.0)
RAYS = (0.0, np.pi / 4, np.pi / 2)
# samples with |Im k| x above this are dropped (exp overflow, cancellation)
MAX_GROWTH = 30.0
MAX_GREEN_GROWTH = 20.0
# perturbations below this fraction of the free quantity are not resolved
NOISE_RTOL = 1e-11
N_RANDOM = 8
# checks without an x axis sample k this many times more densely
SCALAR_K_FACTOR = 4
LIMIT_SCALES = (10.0, 100.0, 1000.0)
LIMIT_WINDOW = 8
LIMIT_RATIO = 0.5
LIMIT_ATOL = 1e-10
GREEN_RATIOS = ((1.0, 2.0), (2.0, 1.0), (1.0, 1.5), (3.0, 1.0))

QUANTITY_ERRORS = (NonConvergenceError, AccuracyLossError, DomainError)


@dataclass
class BoundCheckReport:
    """Outcome of one check for one problem."""

    lemma_id: str
    potential_id: str
    l: float
    kind: str
    status: str
    fitted_C: Optional[float] = None
    max_ratio: Optional[float] = None
    grid_spec: dict = field(default_factory=dict)
    sequence: Optional[list[float]] = None
    reason: str = ""

    @property
    def passed(self) -> bool:
        return self.status == STATUS_PASS

    def to_dict(self) -> dict:
        data = {
            "lemma_id": self.lemma_id,
            "potential_id": self.potential_id,
            "l": self.l,
            "kind": self.kind,
            "status": self.status,
            "fitted_C": self.fitted_C,
            "max_ratio": self.max_ratio,
            "pass": self.passed,
            "grid_spec": self.grid_spec,
        }
        if self.sequence is not None:
            data["sequence"] = self.sequence
        if self.reason:
            data["reason"] = self.reason
        return data

    def to_record(self) -> dict:
        """Row of a CheckTable."""
        return {
            "lemma_id": self.lemma_id,
            "potential_id": self.potential_id,
            "l": self.l,
            "status": self.status,
            "fitted_C": self.fitted_C,
            "max_ratio": self.max_ratio,
        }


# ---------------------------------------------------------------------------
# sample grids


@dataclass(frozen=True)
class SampleGrid:
    """Moduli of k, complex directions and positions of one check stage."""

    k_abs: np.ndarray
    rays: tuple[float, ...]
    x: Optional[np.ndarray]

    @property
    def k(self) -> np.ndarray:
        return np.concatenate([self.k_abs * np.exp(1j * ray) for ray in self.rays])

    def describe(self) -> dict:
        spec = {
            "k_abs": [float(self.k_abs[0]), float(self.k_abs[-1]), len(self.k_abs)],
            "arg_k": [float(ray) for ray in self.rays],
        }
        if self.x is not None:
            spec["x"] = [float(self.x[0]), float(self.x[-1]), len(self.x)]
        return spec


def _log_grid(bounds: tuple[float, float], n: int) -> np.ndarray:
    return np.geomspace(bounds[0], bounds[1], n)


def _log_uniform(rng, bounds: tuple[float, float], n: int) -> np.ndarray:
    return np.exp(rng.uniform(np.log(bounds[0]), np.log(bounds[1]), n))


# ---------------------------------------------------------------------------
# observed / envelope ratios, one k at a time over the x-grid


class _Moments:
    """Cached weighted moments of the potential, keyed by (|k|, x)."""

    def __init__(self, problem: ProblemSpec):
        q = problem.q
        self.head = lru_cache(maxsize=None)(lambda k, x: q.weighted_moment(k, x))
        self.tail = lru_cache(maxsize=None)(lambda k, x: q.weighted_tail_moment(k, x))
        self.first_tail = lru_cache(maxsize=None)(lambda x: q.tail_moment(1, x))

    def weighted(self, k: complex, x: np.ndarray) -> np.ndarray:
        return np.array([self.head(abs(k), float(xi)) for xi in x])

    def weighted_tail(self, k: complex, x: np.ndarray) -> np.ndarray:
        return np.array([self.tail(abs(k), float(xi)) for xi in x])

    def first(self, x: np.ndarray) -> np.ndarray:
        return np.array([self.first_tail(float(xi)) for xi in x])


def _ratio(observed, envelope, scale=None) -> np.ndarray:
    """observed / envelope, with unresolved perturbations counted as 0."""
    observed = np.abs(np.asarray(observed))
    envelope = np.asarray(envelope, dtype=float)
    with np.errstate(divide="ignore", invalid="ignore"):
        ratio = observed / envelope
    if scale is not None:
        ratio = np.where(observed <= NOISE_RTOL * np.abs(scale), 0.0, ratio)
    return ratio


def _growth_mask(k: complex, x: np.ndarray, limit: float = MAX_GROWTH) -> np.ndarray:
    return abs(k.imag) * x <= limit


def _masked(ratio: np.ndarray, mask: np.ndarray) -> np.ndarray:
    return np.where(mask, ratio, np.nan)


def _small(k: complex, x):
    """x / (1 + |k| x)."""
    return x / (1 + abs(k) * x)


def _pairs(x: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """All pairs y < x from the grid."""
    big, small = np.meshgrid(x, x, indexing="ij")
    keep = small < big
    return big[keep], small[keep]


def _free_regular(problem, k, x, moments):
    mask = _growth_mask(k, x)
    xs = np.where(mask, x, 1.0)
    observed = free_phi(problem.l, k**2, xs)[0]
    envelope = _small(k, xs) ** (problem.l + 1) * np.exp(abs(k.imag) * xs)
    return _masked(_ratio(observed, envelope), mask)


def _free_green(problem, k, x, moments):
    big, small = _pairs(x)
    l, s = problem.l, abs(k.imag)
    mask = s * big <= MAX_GROWTH
    big, small = np.where(mask, big, 2.0), np.where(mask, small, 1.0)
    observed = green_free(l, k, big, small)
    envelope = (
        _small(k, big) ** (l + 1)
        * ((1 + abs(k) * small) / small) ** l
        * np.exp(s * (big - small))
    )
    return _masked(_ratio(observed, envelope), mask)


def _regular_perturbation(problem, k, x, moments):
    mask = _growth_mask(k, x)
    xs = x[mask]
    ratio = np.full(len(x), np.nan)
    if len(xs) == 0:
        return ratio
    free = free_phi(problem.l, k**2, xs)[0]
    observed = solve_regular(problem, k, xs).value - free
    envelope = (
        _small(k, xs) ** (problem.l + 1)
        * np.exp(abs(k.imag) * xs)
        * moments.weighted(k, xs)
    )
    ratio[mask] = _ratio(observed, envelope, scale=free)
    return ratio


def _free_regular_dk(problem, k, x, moments):
    mask = _growth_mask(k, x)
    xs = np.where(mask, x, 1.0)
    observed = free_phi_dk(problem.l, k, xs)
    envelope = (
        abs(k) * xs * _small(k, xs) ** (problem.l + 2) * np.exp(abs(k.imag) * xs)
    )
    return _masked(_ratio(observed, envelope), mask)


def _free_green_dk(problem, k, x, moments):
    big, small = _pairs(x)
    l, s = problem.l, abs(k.imag)
    mask = s * (big + small) <= MAX_GREEN_GROWTH
    big, small = np.where(mask, big, 2.0), np.where(mask, small, 1.0)
    observed = green_free_dk(l, k, big, small)
    envelope = (
        abs(k)
        * big
        * _small(k, big) ** (l + 2)
        * ((1 + abs(k) * small) / small) ** l
        * np.exp(s * (big - small))
    )
    return _masked(_ratio(observed, envelope), mask)


def _regular_dk_perturbation(problem, k, x, moments):
    mask = _growth_mask(k, x)
    xs = x[mask]
    ratio = np.full(len(x), np.nan)
    if len(xs) == 0:
        return ratio
    free = free_phi_dk(problem.l, k, xs)
    observed = solve_regular(problem, k, xs, with_dk=True).dk - free
    envelope = (
        abs(k)
        * xs
        * _small(k, xs) ** (problem.l + 2)
        * np.exp(abs(k.imag) * xs)
        * moments.weighted(k, xs)
    )
    ratio[mask] = _ratio(observed, envelope, scale=free)
    return ratio


def _free_weyl(problem, k, x, moments):
    mask = _growth_mask(k, x)
    xs = np.where(mask, x, 1.0)
    observed = free_psi(problem.l, k, xs)[0]
    envelope = _small(k, xs) ** (-problem.l) * np.exp(-abs(k.imag) * xs)
    return _masked(_ratio(observed, envelope), mask)


def _free_weyl_dk(problem, k, x, moments):
    l, kabs = problem.l, abs(k)
    mask = _growth_mask(k, x)
    xs = np.where(mask, x, 1.0)
    observed = free_psi_dk(l, k, xs)
    if l >= 0.5:
        shape = kabs * xs * ((1 + kabs * xs) / xs) ** (l - 1)
    else:
        shape = kabs**l * xs * (kabs * xs / (1 + kabs * xs)) ** l
    envelope = shape * np.exp(-abs(k.imag) * xs)
    return _masked(_ratio(observed, envelope), mask)


def _jost_perturbation(problem, k, x, moments):
    mask = _growth_mask(k, x)
    xs = x[mask]
    ratio = np.full(len(x), np.nan)
    if len(xs) == 0:
        return ratio
    free = free_jost(problem.l, k, xs)[0]
    observed = solve_jost(problem, k, xs).value - free
    u = abs(k) * xs
    envelope = (
        (u / (1 + u)) ** (-problem.l)
        * np.exp(-abs(k.imag) * xs)
        * moments.weighted_tail(k, xs)
    )
    ratio[mask] = _ratio(observed, envelope, scale=free)
    return ratio


def _free_jost_dk(problem, k, x, moments):
    u = abs(k) * x
    observed = free_h_dk(problem.l, k, x)
    envelope = ((1 + u) / u) ** (problem.l - 1) / (x * abs(k) ** 2)
    scale = x * np.abs(free_h(problem.l, k, x)[0])
    return _ratio(observed, envelope, scale=scale)


def _jost_dk_perturbation(problem, k, x, moments):
    free = free_h_dk(problem.l, k, x)
    observed = solve_jost(problem, k, x, with_dk=True).h_dk - free
    u = abs(k) * x
    envelope = ((1 + u) / u) ** problem.l * moments.first(x) / abs(k)
    scale = x * np.abs(free_h(problem.l, k, x)[0])
    return _ratio(observed, envelope, scale=scale)


def _jost_near_zero(problem, k, x, moments):
    observed = 1 / abs(normalized_jost_F(problem, k))
    envelope = abs(k) ** (-min(problem.l + 1.5, 2.0))
    return np.atleast_1d(_ratio(observed, envelope))


def _jost_derivative(problem, k, x, moments):
    kabs = abs(k)
    observed = normalized_jost_F_dk(problem, k)
    envelope = (kabs / (1 + kabs)) ** min(0.0, 2 * problem.l) / (1 + kabs)
    return np.atleast_1d(_ratio(observed, envelope))


def _tilde_phi(problem, k, x, moments):
    kabs = abs(k)
    observed = kabs ** (problem.l + 1) * solve_regular(problem, k, x).value
    u = kabs * x
    envelope = (u / (1 + u)) ** (problem.l + 1)
    return _ratio(observed, envelope)


def _tilde_phi_dk(problem, k, x, moments):
    l, kabs = problem.l, abs(k)
    solution = solve_regular(problem, k, x, with_dk=True)
    observed = (l + 1) * kabs**l * solution.value + kabs ** (l + 1) * solution.dk
    u = kabs * x
    envelope = x * (u / (1 + u)) ** l
    return _ratio(observed, envelope)


def _bessel_remainder(problem, k, x, moments):
    nu = problem.nu
    z = k * x
    mask = (np.abs(z) >= 1) & (np.abs(z.imag) <= MAX_GROWTH)
    zs = np.where(mask, z, 1.0 + 0j)
    root = np.sqrt(zs)
    # d/dz [sqrt(pi z / 2) J_nu(z)] - d/dz cos(z - nu pi/2 - pi/4)
    observed = np.sqrt(np.pi / 2) * (
        bessel("J", nu, zs) / (2 * root) + root * bessel_dz("J", nu, zs)
    ) + np.sin(zs - nu * np.pi / 2 - np.pi / 4)
    envelope = np.exp(np.abs(zs.imag)) / np.abs(zs)
    return _masked(_ratio(observed, envelope), mask)


# ---------------------------------------------------------------------------
# limit sequences


def _window(scale: float) -> np.ndarray:
    return np.geomspace(scale, 2 * scale, LIMIT_WINDOW)


def _jost_modulus_limit(problem: ProblemSpec, scale: float) -> float:
    return max(abs(abs(normalized_jost_F(problem, k)) - 1) for k in _window(scale))


def _jost_expansion_limit(problem: ProblemSpec, scale: float) -> float:
    integral = 0.0 if problem.is_free else problem.q.integral
    return max(
        k * abs(normalized_jost_F(problem, k) - 1 - 0.5j * integral / k)
        for k in _window(scale)
    )


def _green_scaled_limit(problem: ProblemSpec, scale: float) -> float:
    deviation = 0.0
    for a, b in GREEN_RATIOS:
        shift = np.linspace(0, 1, LIMIT_WINDOW)
        eta, xi = scale * a * (1 + shift), scale * b * (1 + shift)
        size = np.sqrt(eta / xi) + np.sqrt(xi / eta)
        exact = scaled_green_dk(problem.l, eta, xi)
        leading = scaled_green_dk_leading(eta, xi)
        deviation = max(deviation, float(np.max(np.abs(exact - leading) / size)))
    return deviation


# ---------------------------------------------------------------------------
# registry


@dataclass(frozen=True)
class BoundCheck:
    """observed <= C * envelope on a (k, x) grid."""

    lemma_id: str
    description: str
    ratio: Callable[..., np.ndarray]
    complex_k: bool = False
    uses_x: bool = True
    k_range: tuple[float, float] = K_RANGE
    needs_potential: bool = False
    kind: str = "bound"


@dataclass(frozen=True)
class LimitCheck:
    """A sequence over growing scales that tends to 0."""

    lemma_id: str
    description: str
    value: Callable[[ProblemSpec, float], float]
    scales: tuple[float, ...] = LIMIT_SCALES
    kind: str = "limit"


CHECKS: dict[str, BoundCheck | LimitCheck] = {
    check.lemma_id: check
    for check in (
        BoundCheck(
            "free_regular_bound",
            "|phi_l(k^2,x)| <= C (x/(1+|k|x))^(l+1) e^(|Im k| x)",
            _free_regular,
            complex_k=True,
        ),
        BoundCheck(
            "free_green_bound",
            "|G_l(k^2,x,y)| <= C (x/(1+|k|x))^(l+1) ((1+|k|y)/y)^l"
            " e^(|Im k|(x-y)), y < x",
            _free_green,
            complex_k=True,
        ),
        BoundCheck(
            "regular_perturbation_bound",
            "|phi - phi_l| <= C (x/(1+|k|x))^(l+1) e^(|Im k| x)"
            " int_0^x y|q|/(1+|k|y) dy",
            _regular_perturbation,
            complex_k=True,
            needs_potential=True,
        ),
        BoundCheck(
            "free_regular_dk_bound",
            "|d/dk phi_l| <= C |k| x (x/(1+|k|x))^(l+2) e^(|Im k| x)",
            _free_regular_dk,
            complex_k=True,
        ),
        BoundCheck(
            "free_green_dk_bound",
            "|d/dk G_l| <= C |k| x (x/(1+|k|x))^(l+2) ((1+|k|y)/y)^l"
            " e^(|Im k|(x-y)), y < x",
            _free_green_dk,
            complex_k=True,
        ),
        BoundCheck(
            "regular_dk_perturbation_bound",
            "|d/dk (phi - phi_l)| <= C |k| x (x/(1+|k|x))^(l+2) e^(|Im k| x)"
            " int_0^x y|q|/(1+|k|y) dy",
            _regular_dk_perturbation,
            complex_k=True,
            needs_potential=True,
        ),
        BoundCheck(
            "free_weyl_bound",
            "|psi_l(k,x)| <= C (x/(1+|k|x))^(-l) e^(-|Im k| x)",
            _free_weyl,
            complex_k=True,
        ),
        BoundCheck(
            "free_weyl_dk_bound",
            "|d/dk psi_l| <= C |k| x ((1+|k|x)/x)^(l-1) e^(-|Im k| x) for l >= 1/2,"
            " C |k|^l x (|k|x/(1+|k|x))^l e^(-|Im k| x) for |l| < 1/2",
            _free_weyl_dk,
            complex_k=True,
        ),
        BoundCheck(
            "jost_perturbation_bound",
            "|f - f_l| <= C (|k|x/(1+|k|x))^(-l) e^(-|Im k| x)"
            " int_x^inf y|q|/(1+|k|y) dy",
            _jost_perturbation,
            complex_k=True,
            needs_potential=True,
        ),
        BoundCheck(
            "free_jost_dk_bound",
            "|d/dk h_l(k,x)| <= C ((1+|k|x)/(|k|x))^(l-1) / (x k^2)",
            _free_jost_dk,
        ),
        BoundCheck(
            "jost_dk_perturbation_bound",
            "|d/dk (h - h_l)| <= C ((1+|k|x)/(|k|x))^l / |k| int_x^inf y|q| dy",
            _jost_dk_perturbation,
            needs_potential=True,
        ),
        LimitCheck(
            "jost_modulus_asymptotics",
            "||F(k)| - 1| -> 0 as k -> inf",
            _jost_modulus_limit,
        ),
        LimitCheck(
            "jost_high_energy_expansion",
            "k |F(k) - 1 - (i/2k) int q| -> 0 as k -> inf",
            _jost_expansion_limit,
        ),
        BoundCheck(
            "jost_near_zero_rate",
            "|F(k)|^(-1) <= C |k|^(-min(l+3/2, 2)) for small k",
            _jost_near_zero,
            uses_x=False,
            k_range=NEAR_ZERO_K_RANGE,
        ),
        BoundCheck(
            "jost_derivative_bound",
            "|F'(k)| <= C (|k|/(1+|k|))^min(0,2l) / (1+|k|)",
            _jost_derivative,
            uses_x=False,
        ),
        BoundCheck(
            "tilde_phi_bound",
            "|k^(l+1) phi(k^2,x)| <= C (|k|x/(1+|k|x))^(l+1)",
            _tilde_phi,
        ),
        BoundCheck(
            "tilde_phi_dk_bound",
            "|d/dk (k^(l+1) phi(k^2,x))| <= C x (|k|x/(1+|k|x))^l",
            _tilde_phi_dk,
        ),
        BoundCheck(
            "bessel_remainder_bound",
            "|d/dz (sqrt(pi z/2) J_nu(z) - cos(z - nu pi/2 - pi/4))|"
            " <= C e^|Im z| / |z| for |z| >= 1",
            _bessel_remainder,
            complex_k=True,
        ),
        LimitCheck(
            "green_scaled_asymptotics",
            "sup |G(eta,xi) - cos(eta-xi)(sqrt(eta/xi) - sqrt(xi/eta))|"
            " / (sqrt(eta/xi) + sqrt(xi/eta)) -> 0 as eta, xi -> inf",
            _green_scaled_limit,
        ),
    )
}
CHECK_IDS = tuple(CHECKS)


def get_check(lemma_id: str) -> BoundCheck | LimitCheck:
    """Look up a check by id."""
    try:
        return CHECKS[lemma_id]
    except KeyError:
        raise ValueError(
            f"Unknown check {lemma_id!r}, expected one of {list(CHECK_IDS)}"
        )


# ---------------------------------------------------------------------------
# running


def sample_grids(
    check: BoundCheck, settings: VerifySettings, seed: int = 0
) -> tuple[SampleGrid, SampleGrid]:
    """Coarse grid and the refined grid containing it.

    The refined grid has (n - 1) * REFINEMENT + 1 points per axis plus
    N_RANDOM log-uniform extra points drawn from ``seed``. Checks without an
    x axis use SCALAR_K_FACTOR times N_K coarse intervals.
    """
    rays = RAYS if check.complex_k else (0.0,)
    rng = np.random.default_rng(seed)

    def refined(bounds, n):
        nested = _log_grid(bounds, (n - 1) * settings.REFINEMENT + 1)
        return np.sort(np.concatenate([nested, _log_uniform(rng, bounds, N_RANDOM)]))

    coarse_x = _log_grid(X_RANGE, settings.N_X) if check.uses_x else None
    fine_x = refined(X_RANGE, settings.N_X) if check.uses_x else None
    n_k = settings.N_K if check.uses_x else (settings.N_K - 1) * SCALAR_K_FACTOR + 1
    coarse = SampleGrid(_log_grid(check.k_range, n_k), rays, coarse_x)
    fine = SampleGrid(refined(check.k_range, n_k), rays, fine_x)
    return coarse, fine


def _max_ratio(
    check: BoundCheck, problem: ProblemSpec, grid: SampleGrid, moments: _Moments
) -> float:
    largest = 0.0
    for k in grid.k:
        ratio = check.ratio(problem, complex(k), grid.x, moments)
        if np.any(np.isinf(ratio)):
            return np.inf
        if not np.all(np.isnan(ratio)):
            largest = max(largest, float(np.nanmax(ratio)))
    return largest


def _run_bound(
    check: BoundCheck,
    problem: ProblemSpec,
    settings: VerifySettings,
    seed: int,
) -> BoundCheckReport:
    coarse, fine = sample_grids(check, settings, seed)
    grid_spec = {
        "coarse": coarse.describe(),
        "fine": fine.describe(),
        "slack": settings.SLACK,
    }
    report = BoundCheckReport(
        check.lemma_id,
        problem.q.id,
        problem.l,
        check.kind,
        STATUS_PASS,
        grid_spec=grid_spec,
    )
    if check.needs_potential and problem.is_free:
        report.fitted_C, report.max_ratio = 0.0, 0.0
        report.reason = "q = 0, the perturbation vanishes"
        return report

    moments = _Moments(problem)
    report.fitted_C = _max_ratio(check, problem, coarse, moments)
    report.max_ratio = _max_ratio(check, problem, fine, moments)
    if not (np.isfinite(report.fitted_C) and np.isfinite(report.max_ratio)):
        report.status = STATUS_FAIL
        report.reason = "the envelope vanishes where the quantity does not"
    elif report.max_ratio > report.fitted_C * (1 + settings.SLACK):
        report.status = STATUS_FAIL
        report.reason = (
            f"refined ratio {report.max_ratio:.6g} exceeds"
            f" {1 + settings.SLACK:g} * {report.fitted_C:.6g}"
        )
    return report


def _run_limit(check: LimitCheck, problem: ProblemSpec) -> BoundCheckReport:
    sequence = [float(check.value(problem, scale)) for scale in check.scales]
    first, last = sequence[0], sequence[-1]
    ratio = last / first if first > 0 else 0.0
    passed = bool(
        np.all(np.isfinite(sequence)) and (last <= LIMIT_ATOL or ratio <= LIMIT_RATIO)
    )
    return BoundCheckReport(
        check.lemma_id,
        problem.q.id,
        problem.l,
        check.kind,
        STATUS_PASS if passed else STATUS_FAIL,
        fitted_C=first,
        max_ratio=ratio,
        grid_spec={"scales": list(check.scales), "window": LIMIT_WINDOW},
        sequence=sequence,
        reason="" if passed else f"sequence {sequence} does not decay",
    )


def check_bound(
    lemma_id: str,
    problem: ProblemSpec,
    settings: Optional[VerifySettings] = None,
    seed: int = 0,
    logger: Optional[logging.Logger] = None,
) -> BoundCheckReport:
    """Run one check; quantities that fail to converge make it inconclusive."""
    if logger is None:
        logger = get_logger("check_bound")
    if settings is None:
        settings = VerifySettings()
    check = get_check(lemma_id)
    try:
        if isinstance(check, LimitCheck):
            report = _run_limit(check, problem)
        else:
            report = _run_bound(check, problem, settings, seed)
    except QUANTITY_ERRORS as exception:
        logger.warning(f"{lemma_id} on {problem} is inconclusive: {exception}")
        return BoundCheckReport(
            lemma_id,
            problem.q.id,
            problem.l,
            check.kind,
            STATUS_INCONCLUSIVE,
            reason=f"{type(exception).__name__}: {exception}",
        )
    log = logger.info if report.passed else logger.warning
    log(
        f"{lemma_id} on {problem}: {report.status}"
        f" (C={report.fitted_C:.4g}, max ratio={report.max_ratio:.4g})"
    )
    return report


def skipped_report(
    lemma_id: str, problem: ProblemSpec, reason: str
) -> BoundCheckReport:
    """Report for a check that was not run."""
    return BoundCheckReport(
        lemma_id,
        problem.q.id,
        problem.l,
        get_check(lemma_id).kind,
        STATUS_SKIPPED,
        reason=reason,
    )
