"""Bessel and Hankel functions of real order at complex argument.

``method="auto"`` uses the AMOS routines wrapped by scipy.special. The ascending
series and the Hankel asymptotic expansion are independent evaluators: each
one certifies its own truncation and rounding error and raises
AccuracyLossError when it cannot reach the requested tolerance, so that the
two can cross-check each other (and the AMOS values) where both apply.
"""

from __future__ import annotations

import cmath
import math
from typing import Literal

import numpy as np
from scipy import special

from radscat.errors import AccuracyLossError, DomainError

BesselKind = Literal["J", "Y", "H1", "H2"]
KINDS = ("J", "Y", "H1", "H2")
METHODS = ("auto", "series", "asymptotic")

EPS = np.finfo(float).eps
DEFAULT_TOL = 1e-12
MAX_SERIES_TERMS = 500
# accuracy of the independent evaluators is certified only for |Im z| <= MAX_IMAG
MAX_IMAG = 50.0


def series_band(nu: float) -> float:
    """Largest |z| handled by the ascending series."""
    return max(12.0, 1.5 * abs(nu))


def asymptotic_band(nu: float) -> float:
    """Smallest |z| handled by the asymptotic expansion."""
    return 25.0 + nu**2 / 2.0


def _check_args(kind: str, z) -> None:
    if kind not in KINDS:
        raise ValueError(f"Unknown Bessel kind {kind!r}, expected one of {KINDS}")
    if np.any(np.asarray(z) == 0):
        raise DomainError("Bessel functions are not evaluated at z = 0", {"kind": kind})


def _is_integer(nu: float) -> bool:
    return abs(nu - round(nu)) < 1e-14


def _amos(kind: str, nu, z, scaled: bool = False):
    z = np.asarray(z, dtype=complex)
    if kind == "J":
        return special.jve(nu, z) if scaled else special.jv(nu, z)
    if kind == "Y":
        return special.yve(nu, z) if scaled else special.yv(nu, z)
    if kind == "H1":
        return special.hankel1e(nu, z) if scaled else special.hankel1(nu, z)
    return special.hankel2e(nu, z) if scaled else special.hankel2(nu, z)


def bessel(kind: BesselKind, nu: float, z, method: str = "auto", tol=DEFAULT_TOL):
    """Evaluate J, Y, H1 or H2 of order nu at complex z.

    Parameters
    ----------
    kind : {"J", "Y", "H1", "H2"}
        Which function
    nu : float
        Real order
    z : complex or array of complex
        Argument (principal branch, cut along the negative real axis)
    method : {"auto", "series", "asymptotic"}
        Evaluator. "series" and "asymptotic" only take scalar arguments.
    tol : float
        Relative tolerance certified by "series" and "asymptotic"

    Raises
    ------
    DomainError
        If z = 0
    AccuracyLossError
        If the chosen evaluator cannot certify tol at this argument
    """
    _check_args(kind, z)
    if method == "auto":
        values = _amos(kind, nu, z)
        return complex(values) if np.ndim(values) == 0 else values
    if method in ("series", "asymptotic") and abs(complex(z).imag) > MAX_IMAG:
        raise AccuracyLossError(
            f"|Im z|={abs(complex(z).imag):.3g} is outside the certified band"
            f" |Im z| <= {MAX_IMAG:g}",
            {"nu": nu, "z": str(z)},
        )
    if method == "series":
        return _series(kind, float(nu), complex(z), tol)
    if method == "asymptotic":
        return _asymptotic(kind, float(nu), complex(z), tol)
    raise ValueError(f"Unknown method {method!r}, expected one of {METHODS}")


def bessel_scaled(kind: BesselKind, nu: float, z):
    """Exponentially scaled Bessel functions.

    J and Y are multiplied by exp(-|Im z|), H1 by exp(-iz) and H2 by exp(iz).
    """
    _check_args(kind, z)
    values = _amos(kind, nu, z, scaled=True)
    return complex(values) if np.ndim(values) == 0 else values


def bessel_dz(kind: BesselKind, nu: float, z):
    """Derivative with respect to z from the recurrence C'_nu = C_{nu-1} - nu/z C_nu."""
    _check_args(kind, z)
    z = np.asarray(z, dtype=complex)
    return _amos(kind, nu - 1, z) - nu / z * _amos(kind, nu, z)


# ---------------------------------------------------------------------------
# ascending series


class _Partial:
    """A compensated partial sum together with the size of its terms."""

    def __init__(self, terms: list[complex]):
        self.value = complex(
            math.fsum(t.real for t in terms), math.fsum(t.imag for t in terms)
        )
        self.magnitude = math.fsum(abs(t) for t in terms)
        self.n_terms = len(terms)

    @property
    def rounding_error(self) -> float:
        return self.magnitude * EPS * (2 + math.sqrt(self.n_terms))


def _certify(value: complex, error: float, tol: float, label: str) -> complex:
    if not abs(value) > 0 or error > tol * abs(value):
        raise AccuracyLossError(
            f"{label}: estimated relative error {error / max(abs(value), 1e-300):.2e}"
            f" exceeds tolerance {tol:.1e}",
            {"estimated_error": error, "value": str(value)},
        )
    return value


def _power(log_base: complex, exponent: float) -> complex:
    return cmath.exp(exponent * log_base)


def _series_j(nu: float, z: complex) -> _Partial:
    """sum_m (-1)^m (z/2)^(2m+nu) / (m! Gamma(m+nu+1)), skipping Gamma poles."""
    half = z / 2
    log_half = cmath.log(half)
    w = -(half**2)
    m = -int(round(nu)) if _is_integer(nu) and nu < 0 else 0
    coeff = (-1) ** m * _power(log_half, 2 * m + nu)
    coeff /= math.factorial(m) * math.gamma(m + nu + 1)
    terms = []
    largest = 0.0
    while len(terms) < MAX_SERIES_TERMS:
        terms.append(coeff)
        largest = max(largest, abs(coeff))
        m += 1
        coeff = coeff * w / (m * (m + nu))
        if m > abs(half) and abs(coeff) < EPS * 1e-3 * largest:
            return _Partial(terms)
    raise AccuracyLossError(
        f"Ascending series did not terminate for nu={nu}, z={z}",
        {"nu": nu, "z": str(z)},
    )


def _series_y_integer(n: int, z: complex) -> _Partial:
    """Limiting form of Y_n for integer n >= 0 (digamma series)."""
    half = z / 2
    log_half = cmath.log(half)
    j_n = _series_j(n, z)
    terms = [2 / math.pi * j_n.value * log_half]
    for m in range(n):
        terms.append(
            -math.factorial(n - m - 1)
            / math.factorial(m)
            * _power(log_half, 2 * m - n)
            / math.pi
        )
    # digamma(m + 1) and digamma(m + n + 1)
    psi_m = -np.euler_gamma
    psi_mn = -np.euler_gamma + math.fsum(1.0 / j for j in range(1, n + 1))
    coeff = _power(log_half, n) / math.factorial(n)
    w = -(half**2)
    largest = abs(terms[0])
    for m in range(MAX_SERIES_TERMS):
        term = -coeff * (psi_m + psi_mn) / math.pi
        terms.append(term)
        largest = max(largest, abs(term))
        psi_m += 1.0 / (m + 1)
        psi_mn += 1.0 / (m + n + 1)
        coeff = coeff * w / ((m + 1) * (m + n + 1))
        if m + 1 > abs(half) and abs(coeff) * (abs(psi_m) + abs(psi_mn)) < (
            EPS * 1e-3 * largest
        ):
            partial = _Partial(terms)
            # the J_n log term carries the J_n rounding error as well
            partial.magnitude += j_n.magnitude * abs(log_half)
            return partial
    raise AccuracyLossError(f"Y_{n} series did not terminate at z={z}", {"z": str(z)})


def _series_y(nu: float, z: complex) -> tuple[complex, float]:
    """Y_nu by the reflection formula or its integer limit; returns (value, error)."""
    if _is_integer(nu):
        n = int(round(nu))
        partial = _series_y_integer(abs(n), z)
        sign = -1 if n < 0 and n % 2 else 1
        return sign * partial.value, partial.rounding_error
    sin_nu = math.sin(nu * math.pi)
    if abs(sin_nu) < 1e-6:
        raise AccuracyLossError(
            f"Order nu={nu} too close to an integer for the reflection formula",
            {"nu": nu},
        )
    cos_nu = math.cos(nu * math.pi)
    j_pos = _series_j(nu, z)
    j_neg = _series_j(-nu, z)
    value = (j_pos.value * cos_nu - j_neg.value) / sin_nu
    magnitude = (abs(j_pos.value * cos_nu) + abs(j_neg.value)) / abs(sin_nu)
    error = (j_pos.rounding_error * abs(cos_nu) + j_neg.rounding_error) / abs(sin_nu)
    return value, error + magnitude * EPS


def _series(kind: str, nu: float, z: complex, tol: float) -> complex:
    if abs(z) > series_band(nu):
        raise AccuracyLossError(
            f"|z|={abs(z):.3g} is outside the series band |z| <= {series_band(nu):.3g}",
            {"nu": nu, "z": str(z)},
        )
    label = f"{kind}_{nu}({z}) series"
    if kind == "J":
        partial = _series_j(nu, z)
        return _certify(partial.value, partial.rounding_error, tol, label)
    y_value, y_error = _series_y(nu, z)
    if kind == "Y":
        return _certify(y_value, y_error, tol, label)
    partial = _series_j(nu, z)
    sign = 1 if kind == "H1" else -1
    value = partial.value + sign * 1j * y_value
    return _certify(value, partial.rounding_error + y_error, tol, label)


# ---------------------------------------------------------------------------
# Hankel asymptotic expansion


def _hankel_asymptotic(nu: float, z: complex, sign: int) -> tuple[complex, float]:
    """H1 (sign=+1) or H2 (sign=-1) with an estimate of the truncation error."""
    mu = 4 * nu**2
    prefactor = cmath.sqrt(2 / (math.pi * z)) * cmath.exp(
        sign * 1j * (z - nu * math.pi / 2 - math.pi / 4)
    )
    total = 1.0 + 0j
    term = 1.0 + 0j
    error = 0.0
    for k in range(1, MAX_SERIES_TERMS):
        new = term * sign * 1j * (mu - (2 * k - 1) ** 2) / (k * 8 * z)
        if new == 0:
            # half-integer order: the expansion terminates
            break
        if abs(new) >= abs(term):
            # smallest term reached, the expansion diverges from here on
            error = abs(new)
            break
        total += new
        term = new
        if abs(new) < EPS * abs(total):
            break
    error += EPS * (1 + math.sqrt(k)) * abs(total)
    return prefactor * total, abs(prefactor) * error


def _asymptotic(kind: str, nu: float, z: complex, tol: float) -> complex:
    if abs(z) < asymptotic_band(nu):
        raise AccuracyLossError(
            f"|z|={abs(z):.3g} is outside the asymptotic band"
            f" |z| >= {asymptotic_band(nu):.3g}",
            {"nu": nu, "z": str(z)},
        )
    label = f"{kind}_{nu}({z}) asymptotic expansion"
    h1, error1 = _hankel_asymptotic(nu, z, +1)
    if kind == "H1":
        return _certify(h1, error1, tol, label)
    h2, error2 = _hankel_asymptotic(nu, z, -1)
    if kind == "H2":
        return _certify(h2, error2, tol, label)
    value = (h1 + h2) / 2 if kind == "J" else (h1 - h2) / 2j
    error = (error1 + error2) / 2 + EPS * (abs(h1) + abs(h2))
    return _certify(value, error, tol, label)
