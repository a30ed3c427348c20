"""Checkable forms of the van der Corput and Beurling inequalities."""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np
from scipy import fft
from scipy.integrate import quad, trapezoid

from radscat.errors import DomainError
from radscat.logger import get_logger
from radscat.oscint.filon import AmplitudeProfile, fresnel_filon

# universal constant of the van der Corput lemma for the phase t k^2
C2 = 2.0 ** (8.0 / 3.0)
BEURLING_SLACK = 0.05
FFT_PADDING = 4
# fraction of the frequency band treated as "near Nyquist"
ALIAS_BAND = 0.2
ALIAS_TOL = 1e-6
MERGE_TOL = 1e-12


@dataclass
class VdcReport:
    """|I(t)| against C2 |t|^{-1/2} ||A|| for each t."""

    t: np.ndarray
    values: np.ndarray
    bounds: np.ndarray
    norm: float

    @property
    def ratios(self) -> np.ndarray:
        with np.errstate(divide="ignore", invalid="ignore"):
            return np.where(self.bounds > 0, np.abs(self.values) / self.bounds, 0.0)

    @property
    def max_ratio(self) -> float:
        return float(np.max(self.ratios)) if len(self.t) else 0.0

    @property
    def ok(self) -> bool:
        return self.max_ratio <= 1.0

    def to_dict(self) -> dict:
        return {
            "t": self.t.tolist(),
            "abs_values": np.abs(self.values).tolist(),
            "bounds": self.bounds.tolist(),
            "norm": self.norm,
            "max_ratio": self.max_ratio,
            "pass": self.ok,
        }


def vdc_bound_check(
    t_list: Sequence[float],
    profile: AmplitudeProfile,
    c: float = 0.0,
    values: Optional[Sequence[complex]] = None,
    logger: Optional[logging.Logger] = None,
) -> VdcReport:
    """Compare |I(t)| with C2 |t|^{-1/2} (||A||_inf + ||A'||_1).

    When ``profile.measure_tv`` is set the measure form is used instead, which
    holds for every t != 0. Precomputed ``values`` (e.g. closed forms) skip
    the quadrature.
    """
    if logger is None:
        logger = get_logger("vdc_bound_check")
    t_arr = np.asarray(t_list, dtype=float)
    if np.any(t_arr == 0):
        raise DomainError("The van der Corput bound needs t != 0")
    if profile.measure_tv is None and np.any(np.abs(t_arr) < 1):
        raise DomainError(
            "The absolutely continuous form of the bound is stated for |t| >= 1",
            details={"t": t_arr.tolist()},
        )
    if values is None:
        values = [fresnel_filon(t, c, profile, logger=logger).value for t in t_arr]
    values = np.asarray(values, dtype=complex)
    if values.shape != t_arr.shape:
        raise ValueError("values and t_list must have the same length")

    norm = profile.norm
    report = VdcReport(
        t=t_arr, values=values, bounds=C2 * norm / np.sqrt(np.abs(t_arr)), norm=norm
    )
    if not report.ok:
        logger.warning(
            f"van der Corput bound exceeded: max ratio {report.max_ratio:.4f}"
        )
    return report


@dataclass
class BeurlingReport:
    """Discrete ||f^||_1 against sqrt(pi) ||f||_{H^1}."""

    l1_fourier: float
    h1_norm: float
    slack: float = BEURLING_SLACK
    aliased: bool = False

    @property
    def bound(self) -> float:
        return float(np.sqrt(np.pi) * self.h1_norm)

    @property
    def ratio(self) -> float:
        if self.bound == 0:
            return 0.0 if self.l1_fourier == 0 else float("inf")
        return self.l1_fourier / self.bound

    @property
    def ok(self) -> bool:
        return self.l1_fourier <= self.bound * (1 + self.slack)

    def to_dict(self) -> dict:
        return {
            "l1_fourier": self.l1_fourier,
            "h1_norm": self.h1_norm,
            "bound": self.bound,
            "ratio": self.ratio,
            "aliased": self.aliased,
            "pass": self.ok,
        }


def beurling_check(
    k,
    f,
    df=None,
    slack: float = BEURLING_SLACK,
    padding: int = FFT_PADDING,
    logger: Optional[logging.Logger] = None,
) -> BeurlingReport:
    """Check ||f^||_{L^1} <= sqrt(pi) (||f||_2^2 + ||f'||_2^2)^{1/2} on samples.

    f^(p) = (2 pi)^{-1/2} int f(k) e^{-ikp} dk is estimated with a zero-padded
    FFT of the samples on the uniform grid ``k``. Without ``df`` the
    derivative is taken by finite differences.
    """
    if logger is None:
        logger = get_logger("beurling_check")
    k = np.asarray(k, dtype=float)
    f = np.asarray(f, dtype=complex)
    if k.shape != f.shape or k.ndim != 1 or len(k) < 3:
        raise ValueError("k and f must be 1D arrays of the same length >= 3")
    step = np.diff(k)
    dk = float(step[0])
    if not np.allclose(step, dk, rtol=1e-8, atol=0):
        raise DomainError("beurling_check needs a uniform k grid")
    df = np.gradient(f, dk) if df is None else np.asarray(df, dtype=complex)

    h1_norm = float(
        np.sqrt(trapezoid(np.abs(f) ** 2, k) + trapezoid(np.abs(df) ** 2, k))
    )
    n_pad = padding * len(k)
    spectrum = np.abs(fft.fft(f, n=n_pad)) * dk / np.sqrt(2 * np.pi)
    dp = 2 * np.pi / (n_pad * dk)
    l1_fourier = float(np.sum(spectrum) * dp)

    # energy near the Nyquist frequency means f' is not resolved
    freqs = np.abs(fft.fftfreq(n_pad))
    band = freqs > 0.5 * (1 - ALIAS_BAND)
    peak = float(np.max(spectrum)) if spectrum.size else 0.0
    aliased = bool(peak > 0 and np.max(spectrum[band]) > ALIAS_TOL * peak)
    if aliased:
        logger.warning(
            "Spectrum does not decay before the Nyquist frequency"
            f" (dk={dk:g}); the derivative may be under-resolved"
        )
    report = BeurlingReport(
        l1_fourier=l1_fourier, h1_norm=h1_norm, slack=slack, aliased=aliased
    )
    if not report.ok:
        logger.warning(f"Beurling inequality violated: ratio {report.ratio:.4f}")
    return report


def h_family(eta: float, l: float, k) -> np.ndarray:
    """h_{eta,l}(k) = 1 - ((eta + k^2) / (1 + k^2))^((l+1)/2)."""
    k = np.asarray(k, dtype=float)
    return 1.0 - ((eta + k**2) / (1 + k**2)) ** ((l + 1) / 2)


def h_family_dk(eta: float, l: float, k) -> np.ndarray:
    """d/dk h_{eta,l}."""
    k = np.asarray(k, dtype=float)
    ratio = (eta + k**2) / (1 + k**2)
    dratio = 2 * k * (1 - eta) / (1 + k**2) ** 2
    with np.errstate(divide="ignore", invalid="ignore"):
        power = np.where(ratio > 0, ratio ** ((l - 1) / 2), 0.0)
    return -(l + 1) / 2 * power * dratio


def _h_family_bound(l: float) -> float:
    """sqrt(pi) times an eta-independent bound on ||h_{eta,l}||_{H^1}.

    ||h_eta||_2 <= ||h_0||_2, and |h_eta'| <= (l+1)|k|/(1+k^2)^2 for l >= 1,
    (l+1)|k|^l (1+k^2)^{-(l+3)/2} otherwise.
    """
    l2_sq, _ = quad(lambda k: h_family(0.0, l, k) ** 2, 0, np.inf, limit=200)

    def deriv(k):
        if l >= 1:
            return ((l + 1) * k / (1 + k**2) ** 2) ** 2
        return ((l + 1) * k**l * (1 + k**2) ** (-(l + 3) / 2)) ** 2

    d_sq, _ = quad(deriv, 0, np.inf, limit=200)
    return float(np.sqrt(np.pi) * np.sqrt(2 * (l2_sq + d_sq)))


@dataclass
class BeurlingSweep:
    """Beurling checks across the h_{eta,l} family with a uniform bound."""

    l: float
    etas: np.ndarray
    reports: list[BeurlingReport]
    uniform_bound: float
    slack: float = BEURLING_SLACK

    @property
    def l1_fourier(self) -> np.ndarray:
        return np.array([report.l1_fourier for report in self.reports])

    @property
    def ok(self) -> bool:
        uniform = np.all(self.l1_fourier <= self.uniform_bound * (1 + self.slack))
        return bool(uniform and all(report.ok for report in self.reports))

    def to_dict(self) -> dict:
        return {
            "l": self.l,
            "etas": self.etas.tolist(),
            "l1_fourier": self.l1_fourier.tolist(),
            "uniform_bound": self.uniform_bound,
            "pass": self.ok,
        }


def beurling_sweep(
    l: float,
    etas: Sequence[float] = (0.01, 0.03, 0.1, 0.3, 1.0),
    half_width: float = 200.0,
    n_points: int = 2**16,
    slack: float = BEURLING_SLACK,
    logger: Optional[logging.Logger] = None,
) -> BeurlingSweep:
    """Beurling checks of h_{eta,l} on [-half_width, half_width] for each eta."""
    if logger is None:
        logger = get_logger("beurling_sweep")
    if not l > -0.5:
        raise DomainError(f"Angular momentum must satisfy l > -1/2, got {l}")
    etas = np.asarray(etas, dtype=float)
    if np.any((etas <= 0) | (etas > 1)):
        raise DomainError("eta must lie in (0, 1]")
    k = np.linspace(-half_width, half_width, n_points)
    reports = [
        beurling_check(
            k,
            h_family(eta, l, k),
            h_family_dk(eta, l, k),
            slack=slack,
            logger=logger,
        )
        for eta in etas
    ]
    sweep = BeurlingSweep(
        l=l,
        etas=etas,
        reports=reports,
        uniform_bound=_h_family_bound(l),
        slack=slack,
    )
    logger.info(
        f"h family (l={l:g}): max ||h^||_1 = {np.max(sweep.l1_fourier):.4f},"
        f" uniform bound {sweep.uniform_bound:.4f}"
    )
    return sweep


@dataclass
class DiscreteMeasure:
    """Finite sum of point masses, weights[i] at positions[i]."""

    positions: np.ndarray
    weights: np.ndarray = field(default_factory=lambda: np.zeros(0))

    def __post_init__(self):
        self.positions = np.atleast_1d(np.asarray(self.positions, dtype=float))
        self.weights = np.atleast_1d(np.asarray(self.weights, dtype=complex))
        if self.positions.shape != self.weights.shape:
            raise ValueError("positions and weights must have the same length")

    @property
    def total_variation(self) -> float:
        return float(np.sum(np.abs(self.weights)))

    def fourier(self, k) -> np.ndarray:
        """int e^{ikp} d alpha(p)."""
        k = np.asarray(k, dtype=float)
        return np.exp(1j * np.multiply.outer(k, self.positions)) @ self.weights

    def convolve(self, other: DiscreteMeasure) -> DiscreteMeasure:
        """alpha * beta, with coinciding atoms merged."""
        positions = np.add.outer(self.positions, other.positions).ravel()
        weights = np.multiply.outer(self.weights, other.weights).ravel()
        order = np.argsort(positions, kind="stable")
        positions, weights = positions[order], weights[order]
        if len(positions) == 0:
            return DiscreteMeasure(positions, weights)
        scale = max(1.0, float(np.max(np.abs(positions))))
        new_atom = np.concatenate([[True], np.diff(positions) > MERGE_TOL * scale])
        groups = np.cumsum(new_atom) - 1
        merged = np.zeros(groups[-1] + 1, dtype=complex)
        np.add.at(merged, groups, weights)
        return DiscreteMeasure(positions[new_atom], merged)


@dataclass(frozen=True)
class ConvolutionReport:
    """Total variation of a convolution and the product rule for transforms."""

    tv_convolution: float
    tv_product: float
    fourier_residual: float

    @property
    def ok(self) -> bool:
        return (
            self.tv_convolution <= self.tv_product * (1 + 1e-12)
            and self.fourier_residual <= 1e-10 * max(1.0, self.tv_product)
        )


def convolution_check(
    first: DiscreteMeasure, second: DiscreteMeasure, k=None
) -> ConvolutionReport:
    """||a * b|| <= ||a|| ||b|| and (a * b)^ = a^ b^ at sample momenta."""
    if k is None:
        k = np.linspace(-10.0, 10.0, 41)
    product = first.convolve(second)
    residual = np.max(
        np.abs(product.fourier(k) - first.fourier(k) * second.fourier(k))
    )
    return ConvolutionReport(
        tv_convolution=product.total_variation,
        tv_product=first.total_variation * second.total_variation,
        fourier_residual=float(residual),
    )
