"""The Bessel product r_l and its representation as a Fourier transform of a measure.

r_l(k; x, y) = k sqrt(xy) J_nu(k min(x,y)) H1_nu(k max(x,y)) with nu = l + 1/2,
and r_l(-k) = conj(r_l(k)). The free resolvent kernel is (i pi / 2) r_l / k.

For integer l and k > 0, x <= y,

    r_l(k; x, y) = (2 pi)^{-1/2} int e^{-ikp} d rho_l(p)

where rho_l has point masses sqrt(2/pi) at p = x - y and -(-1)^l sqrt(2/pi) at
p = -(x + y), and density -2 (2 pi)^{-1/2} P_l(p) on (-(x + y), x - y).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from numpy.polynomial import Polynomial
from scipy import special
from scipy.integrate import quad

from radscat.errors import DomainError

MEASURE_LS = (0, 1, 2, 3)


def _check(k, x, y) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    k = np.asarray(k, dtype=float)
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    if np.any(k == 0):
        raise DomainError("r_l is evaluated at real k != 0")
    if np.any(x <= 0) or np.any(y <= 0):
        raise DomainError("r_l is evaluated at x, y > 0")
    return k, x, y


def rl_eval(l: float, k, x, y) -> np.ndarray:
    """k sqrt(xy) J_nu(k min) H1_nu(k max), conjugated for k < 0."""
    k, x, y = _check(k, x, y)
    nu = l + 0.5
    lo, hi = np.minimum(x, y), np.maximum(x, y)
    kk = np.abs(k)
    j, h = special.jv(nu, kk * lo), special.hankel1(nu, kk * hi)
    value = kk * np.sqrt(x * y) * j * h
    return np.where(k > 0, value, np.conj(value))


def rl_eval_dk(l: float, k, x, y) -> np.ndarray:
    """d/dk r_l(k; x, y)."""
    k, x, y = _check(k, x, y)
    nu = l + 0.5
    lo, hi = np.minimum(x, y), np.maximum(x, y)
    kk = np.abs(k)
    j, h = special.jv(nu, kk * lo), special.hankel1(nu, kk * hi)
    dj, dh = special.jvp(nu, kk * lo), special.h1vp(nu, kk * hi)
    value = np.sqrt(x * y) * (j * h + kk * lo * dj * h + kk * hi * j * dh)
    # r_l(-k) = conj r_l(k), so d/dk at -k is -conj of d/dk at k
    return np.where(k > 0, value, -np.conj(value))


def rl_recursion_residual(l: float, k, x, y) -> np.ndarray:
    """|r_{l+1} - r_{l-1} + (2l+1)/(kxy) (d/dk - 1/k) r_l|, relative to its terms."""
    k, x, y = _check(k, x, y)
    upper = rl_eval(l + 1, k, x, y)
    lower = rl_eval(l - 1, k, x, y)
    middle = rl_eval(l, k, x, y)
    dmiddle = rl_eval_dk(l, k, x, y)
    correction = (2 * l + 1) / (k * x * y) * (dmiddle - middle / k)
    residual = upper - lower + correction
    scale = np.maximum.reduce([np.abs(upper), np.abs(lower), np.abs(correction)])
    return np.abs(residual) / np.maximum(scale, np.finfo(float).tiny)


def measure_polynomial(l: int, x: float, y: float) -> Polynomial:
    """Density polynomial P_l of the measure for x, y > 0."""
    s2 = x**2 + y**2
    if l == 0:
        return Polynomial([0.0])
    if l == 1:
        return Polynomial([0.0, -1.0 / (x * y)])
    if l == 2:
        d = 2 * x**2 * y**2
        return Polynomial([0.0, -3 * s2 / d, 0.0, 3 / d])
    if l == 3:
        d = 8 * x**3 * y**3
        linear = -3 * (5 * x**4 + 6 * x**2 * y**2 + 5 * y**4) / d
        return Polynomial([0.0, linear, 0.0, 30 * s2 / d, 0.0, -15 / d])
    raise DomainError(f"Explicit measures are tabulated for l in {MEASURE_LS}, got {l}")


@dataclass(frozen=True)
class RlMeasure:
    """Point masses and polynomial density representing r_l(.; x, y)."""

    l: int
    x: float
    y: float

    def __post_init__(self):
        if self.l not in MEASURE_LS:
            raise DomainError(
                f"Explicit measures are tabulated for l in {MEASURE_LS}, got {self.l}"
            )
        if self.x <= 0 or self.y <= 0:
            raise DomainError("The measure is defined for x, y > 0")

    @property
    def lo(self) -> float:
        return min(self.x, self.y)

    @property
    def hi(self) -> float:
        return max(self.x, self.y)

    @property
    def window(self) -> tuple[float, float]:
        return -(self.lo + self.hi), self.lo - self.hi

    @property
    def atoms(self) -> tuple[np.ndarray, np.ndarray]:
        """Positions and weights of the point masses."""
        weight = np.sqrt(2 / np.pi)
        positions = np.array([self.lo - self.hi, -(self.lo + self.hi)])
        weights = np.array([weight, -((-1) ** self.l) * weight])
        return positions, weights

    @property
    def polynomial(self) -> Polynomial:
        return measure_polynomial(self.l, self.lo, self.hi)

    @property
    def total_variation(self) -> float:
        """Point masses plus 2 (2 pi)^{-1/2} int_window |P_l|."""
        _, weights = self.atoms
        poly = self.polynomial
        a, b = self.window
        roots = [
            float(root.real)
            for root in poly.roots()
            if abs(root.imag) < 1e-12 and a < root.real < b
        ]
        density, _ = quad(lambda p: abs(poly(p)), a, b, points=roots or None)
        return float(np.sum(np.abs(weights)) + 2 / np.sqrt(2 * np.pi) * density)

    def window_integral(self, k: float) -> complex:
        """int_window e^{-ikp} P_l(p) dp by repeated integration by parts."""
        a, b = self.window
        poly = self.polynomial
        ik = 1j * k

        def antiderivative(p: float) -> complex:
            total = 0j
            deriv = poly
            for j in range(poly.degree() + 1):
                total += deriv(p) / ik ** (j + 1)
                deriv = deriv.deriv()
            return -np.exp(-ik * p) * total

        return complex(antiderivative(b) - antiderivative(a))

    def fourier(self, k: float) -> complex:
        """(2 pi)^{-1/2} int e^{-ikp} d rho_l(p) for k > 0."""
        if not k > 0:
            raise DomainError("The measure representation is used for k > 0")
        positions, weights = self.atoms
        atoms = np.sum(weights * np.exp(-1j * k * positions)) / np.sqrt(2 * np.pi)
        return complex(atoms - self.window_integral(k) / np.pi)


def rl_measure(l: int, x: float, y: float) -> RlMeasure:
    """Measure data of r_l(.; x, y) for l in 0..3."""
    return RlMeasure(int(l), float(x), float(y))


def rl_measure_check(l: int, k: float, x: float, y: float) -> float:
    """|r_l(k; x, y) - (2 pi)^{-1/2} int e^{-ikp} d rho_l| at k > 0."""
    if float(l) != int(l):
        raise DomainError(f"The measure check needs an integer l, got {l}")
    measure = rl_measure(int(l), x, y)
    return float(abs(complex(rl_eval(l, k, x, y)) - measure.fourier(float(k))))
