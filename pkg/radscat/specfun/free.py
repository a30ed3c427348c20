"""Solutions of the unperturbed Bessel equation -u'' + l(l+1)/x^2 u = z u.

Conventions: nu = l + 1/2, W(u, v) = u v' - u' v, W(theta_l, phi_l) = 1 and
W(psi_l, phi_l) = 1.

The ``*_scaled`` helpers strip the exponential growth so that complex k does
not overflow: phi_l = exp(s x) a and theta_l = exp(s x) c with s = |Im sqrt(z)|,
psi_l = exp(-s x) b with s = Im k >= 0. They take arrays of x and are shared
with the Volterra solvers.
"""

from __future__ import annotations

import cmath
import math
from typing import Literal

import numpy as np
from scipy import special

from radscat.errors import DomainError
from radscat.problem import SolutionSample

FreeSolutionKind = Literal["phi_l", "theta_l", "psi_l", "f_l", "h_l"]
FREE_KINDS = ("phi_l", "theta_l", "psi_l", "f_l", "h_l")
DK_KINDS = ("phi_l", "psi_l", "h_l")

# |k| max(x, y) below which the (phi_l, theta_l) form of G_l is used
GREEN_SWITCH = 1.0


def c_l(l: float) -> float:
    """Normalization C_l = sqrt(pi) / (Gamma(l + 3/2) 2^(l+1))."""
    return math.sqrt(math.pi) / (math.gamma(l + 1.5) * 2 ** (l + 1))


def is_log_case(l: float) -> bool:
    """True if l + 1/2 is a positive integer."""
    nu = l + 0.5
    return abs(nu - round(nu)) < 1e-14 and round(nu) >= 1


def _check_l(l: float):
    if not l > -0.5:
        raise DomainError(f"Angular momentum must satisfy l > -1/2, got {l}", {"l": l})


def _check_x(x):
    if np.any(np.asarray(x) <= 0):
        raise DomainError("Free solutions are evaluated at x > 0 only")


def canonical_root(z: complex) -> complex:
    """Square root of z with Im >= 0 (phi_l and theta_l are even in it)."""
    w = cmath.sqrt(complex(z))
    return -w if w.imag < 0 else w


# ---------------------------------------------------------------------------
# scaled building blocks (arrays of x)


def phi_l_scaled(l: float, w: complex, x):
    """(a, a') with phi_l(w^2, x) = exp(Im(w) x) a(x), Im w >= 0."""
    nu = l + 0.5
    x = np.asarray(x, dtype=float)
    if w == 0:
        c = c_l(l)
        return (c * x ** (l + 1)).astype(complex), (c * (l + 1) * x**l).astype(complex)
    u = w * x
    root = np.sqrt(np.pi * x / 2)
    j_nu = special.jve(nu, u)
    j_nm1 = special.jve(nu - 1, u)
    scale = w ** (-nu)
    value = scale * root * j_nu
    deriv = scale * root * (w * j_nm1 - (l / x) * j_nu)
    return value, deriv


def theta_l_scaled(l: float, z: complex, x):
    """(c, c') with theta_l(z, x) = exp(|Im sqrt z| x) c(x)."""
    nu = l + 0.5
    x = np.asarray(x, dtype=float)
    if z == 0:
        norm = 1.0 / ((2 * l + 1) * c_l(l))
        return (norm * x ** (-l)).astype(complex), (-l * norm * x ** (-l - 1)).astype(
            complex
        )
    root = np.sqrt(np.pi * x / 2)
    if is_log_case(l):
        n = int(round(nu))
        w = cmath.sqrt(complex(z))
        u = w * x
        log_z = cmath.log(complex(z))
        combo = log_z / np.pi * special.jve(n, u) - special.yve(n, u)
        combo_m1 = log_z / np.pi * special.jve(n - 1, u) - special.yve(n - 1, u)
        scale = w**n
        return scale * root * combo, scale * root * (w * combo_m1 - (l / x) * combo)
    w = canonical_root(z)
    u = w * x
    scale = w**nu / math.sin(nu * math.pi)
    j_mnu = special.jve(-nu, u)
    j_mnu_m1 = special.jve(-nu - 1, u)
    value = scale * root * j_mnu
    deriv = scale * root * (w * j_mnu_m1 + ((l + 1) / x) * j_mnu)
    return value, deriv


def psi_l_scaled(l: float, k: complex, x):
    """(b, b') with psi_l(k, x) = exp(-Im(k) x) b(x), Im k >= 0."""
    nu = l + 0.5
    x = np.asarray(x, dtype=float)
    if k == 0:
        return theta_l_scaled(l, 0.0, x)
    u = k * x
    root = np.sqrt(np.pi * x / 2)
    phase = np.exp(1j * k.real * x)
    h_nu = special.hankel1e(nu, u) * phase
    h_nm1 = special.hankel1e(nu - 1, u) * phase
    scale = 1j * k**nu
    return scale * root * h_nu, scale * root * (k * h_nm1 - (l / x) * h_nu)


def psi_l_dk_scaled(l: float, k: complex, x):
    """(d/dk psi_l, d/dx d/dk psi_l), both times exp(Im(k) x)."""
    nu = l + 0.5
    x = np.asarray(x, dtype=float)
    u = k * x
    root = np.sqrt(np.pi * x / 2)
    phase = np.exp(1j * k.real * x)
    h_nm1 = special.hankel1e(nu - 1, u) * phase
    h_nm2 = special.hankel1e(nu - 2, u) * phase
    scale = 1j * k**nu
    value = scale * x * root * h_nm1
    # product rule on x * sqrt(x) H_{nu-1}(kx)
    deriv = scale * root * (x * (k * h_nm2 - ((l - 1) / x) * h_nm1) + h_nm1)
    return value, deriv


def phi_l_dk_scaled(l: float, k: complex, x):
    """(d/dk phi_l(k^2, x), its x-derivative), both times exp(-Im(k) x)."""
    x = np.asarray(x, dtype=float)
    value, deriv = phi_l_scaled(l + 1, k, x)
    return -k * x * value, -k * (value + x * deriv)


def theta_l_dk_scaled(l: float, k: complex, x):
    """d/dk theta_l(k^2, x) times exp(-|Im k| x)."""
    nu = l + 0.5
    k = complex(k)
    x = np.asarray(x, dtype=float)
    u = k * x
    root = np.sqrt(np.pi * x / 2)
    if is_log_case(l):
        n = int(round(nu))
        log_term = k ** (n - 1) * special.jve(n, u)
        log_term += cmath.log(k) * k**n * x * special.jve(n - 1, u)
        return root * (2 / np.pi * log_term - k**n * x * special.yve(n - 1, u))
    return -(k**nu) * x / math.sin(nu * math.pi) * root * special.jve(1 - nu, u)


# ---------------------------------------------------------------------------
# unscaled values


def _unscale(pair, exponent):
    factor = np.exp(exponent)
    return pair[0] * factor, pair[1] * factor


def free_phi(l: float, z: complex, x):
    """phi_l(z, x) and its x-derivative."""
    w = canonical_root(z)
    return _unscale(phi_l_scaled(l, w, x), w.imag * np.asarray(x, dtype=float))


def free_theta(l: float, z: complex, x, allow_cut: bool = False):
    """theta_l(z, x) and its x-derivative.

    In the log case (l + 1/2 integer) the formula involves log(z); z on the
    negative real axis raises DomainError unless ``allow_cut`` is set, in which
    case the continuous upper-side value is used.
    """
    z = complex(z)
    if is_log_case(l) and z.imag == 0 and z.real < 0 and not allow_cut:
        raise DomainError(
            f"theta_l with l + 1/2 integer is not evaluated on the cut (z={z})",
            {"l": l, "z": str(z)},
        )
    s = abs(cmath.sqrt(z).imag)
    return _unscale(theta_l_scaled(l, z, x), s * np.asarray(x, dtype=float))


def _reflect(k: complex) -> tuple[complex, bool]:
    """Map real negative k to |k| (values are conjugated afterwards)."""
    k = complex(k)
    if k.imag < 0:
        raise DomainError(f"Jost-type solutions need Im k >= 0, got k={k}")
    if k.imag == 0 and k.real < 0:
        return -k, True
    return k, False


def free_psi(l: float, k: complex, x):
    """psi_l(k, x) and its x-derivative (psi_l(0, x) = theta_l(0, x))."""
    k, conjugate = _reflect(k)
    value, deriv = _unscale(psi_l_scaled(l, k, x), -k.imag * np.asarray(x, float))
    if conjugate:
        return np.conj(value), np.conj(deriv)
    return value, deriv


def free_jost_function(l: float, k: complex) -> complex:
    """f_l(k) = W(f_l(k, .), phi_l(k^2, .)) = k^(-l) exp(i pi l / 2)."""
    k, conjugate = _reflect(k)
    if k == 0:
        raise DomainError("The free Jost function is singular at k = 0")
    value = k ** (-l) * cmath.exp(0.5j * math.pi * l)
    return value.conjugate() if conjugate else value


def free_jost(l: float, k: complex, x):
    """f_l(k, x) = exp(i pi l/2) k^(-l) psi_l(k, x) and its x-derivative."""
    k_ref, conjugate = _reflect(k)
    if k_ref == 0:
        raise DomainError("The free Jost solution is singular at k = 0")
    factor = cmath.exp(0.5j * math.pi * l) * k_ref ** (-l)
    value, deriv = free_psi(l, k_ref, x)
    value, deriv = factor * value, factor * deriv
    if conjugate:
        return np.conj(value), np.conj(deriv)
    return value, deriv


def free_h(l: float, k: complex, x):
    """h_l(k, x) = exp(-ikx) f_l(k, x) and its x-derivative."""
    k_ref, conjugate = _reflect(k)
    if k_ref == 0:
        raise DomainError("h_l is singular at k = 0")
    x = np.asarray(x, dtype=float)
    nu = l + 0.5
    u = k_ref * x
    prefactor = 1j * cmath.exp(0.5j * math.pi * l) * np.sqrt(np.pi * k_ref * x / 2)
    h_nu = special.hankel1e(nu, u)
    h_nm1 = special.hankel1e(nu - 1, u)
    value = prefactor * h_nu
    # d/dx [sqrt(x) H(kx) e^{-ikx}]
    #   = sqrt(x) e^{-ikx} [k H_{nu-1} - (l/x) H_nu - ik H_nu]
    deriv = prefactor * (k_ref * h_nm1 - (l / x) * h_nu - 1j * k_ref * h_nu)
    if conjugate:
        return np.conj(value), np.conj(deriv)
    return value, deriv


def free_solution(
    kind: FreeSolutionKind, l: float, k_or_z: complex, x: float
) -> SolutionSample:
    """Value and x-derivative of a free solution.

    phi_l and theta_l take the energy z, the Jost-type kinds psi_l, f_l and h_l
    take the momentum k (Im k >= 0).
    """
    _check_l(l)
    _check_x(x)
    functions = {
        "phi_l": free_phi,
        "theta_l": free_theta,
        "psi_l": free_psi,
        "f_l": free_jost,
        "h_l": free_h,
    }
    if kind not in functions:
        raise ValueError(f"Unknown free solution kind {kind!r}, expected {FREE_KINDS}")
    if kind in ("f_l", "h_l") and k_or_z == 0:
        raise DomainError(f"{kind} is singular at k = 0")
    value, deriv = functions[kind](l, complex(k_or_z), float(x))
    return SolutionSample(value=complex(value), dx=complex(deriv))


# ---------------------------------------------------------------------------
# k-derivatives


def free_phi_dk(l: float, k: complex, x):
    """d/dk phi_l(k^2, x) = -k x phi_{l+1}(k^2, x)."""
    x = np.asarray(x, dtype=float)
    return -k * x * free_phi(l + 1, complex(k) ** 2, x)[0]


def free_psi_dk(l: float, k: complex, x):
    """d/dk psi_l(k^2, x) = i k^nu x sqrt(pi x/2) H1_{nu-1}(kx)."""
    k_ref, conjugate = _reflect(k)
    x = np.asarray(x, dtype=float)
    value = psi_l_dk_scaled(l, k_ref, x)[0] * np.exp(-k_ref.imag * x)
    # for k < 0 the conjugation symmetry flips the sign of d/dk
    return -np.conj(value) if conjugate else value


def free_h_dk(l: float, k: complex, x):
    """d/dk h_l(k, x)."""
    k_ref, conjugate = _reflect(k)
    x = np.asarray(x, dtype=float)
    nu = l + 0.5
    u = k_ref * x
    prefactor = 1j * cmath.exp(0.5j * math.pi * l) * np.sqrt(np.pi * k_ref * x / 2)
    h_nu = special.hankel1e(nu, u)
    h_nm1 = special.hankel1e(nu - 1, u)
    value = prefactor * (x * h_nm1 - (l / k_ref + 1j * x) * h_nu)
    return -np.conj(value) if conjugate else value


def free_solution_dk(kind: str, l: float, k: complex, x: float) -> complex:
    """k-derivative of phi_l(k^2, x), psi_l(k, x) or h_l(k, x)."""
    _check_l(l)
    _check_x(x)
    if k == 0:
        raise DomainError("k-derivatives of free solutions are evaluated at k != 0")
    functions = {"phi_l": free_phi_dk, "psi_l": free_psi_dk, "h_l": free_h_dk}
    if kind not in functions:
        raise ValueError(
            f"Unknown kind {kind!r} for k-derivatives, expected {DK_KINDS}"
        )
    return complex(functions[kind](l, complex(k), float(x)))


# ---------------------------------------------------------------------------
# Green's function


def _green_phi_theta(l, k, x, y):
    z = complex(k) ** 2
    phi_x, _ = free_phi(l, z, x)
    phi_y, _ = free_phi(l, z, y)
    theta_x, _ = free_theta(l, z, x, allow_cut=True)
    theta_y, _ = free_theta(l, z, y, allow_cut=True)
    return phi_x * theta_y - phi_y * theta_x


def _green_hankel_scaled(l, k, x, y):
    """G_l exp(-|Im k| |x - y|) from (i pi/4) sqrt(xy)[H1(ky)H2(kx) - H1(kx)H2(ky)]."""
    nu = l + 0.5
    k = complex(k)
    if k.imag < 0:
        k = -k
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    s = k.imag
    first = special.hankel1e(nu, k * y) * special.hankel2e(nu, k * x)
    second = special.hankel1e(nu, k * x) * special.hankel2e(nu, k * y)
    # H1(ky)H2(kx) = first * exp(ik(y - x)), H1(kx)H2(ky) = second * exp(ik(x - y))
    dist = np.abs(x - y)
    phase_1 = np.exp(1j * k.real * (y - x) + s * (x - y) - s * dist)
    phase_2 = np.exp(1j * k.real * (x - y) + s * (y - x) - s * dist)
    return 0.25j * np.pi * np.sqrt(x * y) * (first * phase_1 - second * phase_2)


def green_free(l: float, k: complex, x, y, form: str = "auto"):
    """G_l(k^2, x, y) = phi_l(x) theta_l(y) - phi_l(y) theta_l(x).

    Parameters
    ----------
    form : {"auto", "phi_theta", "hankel"}
        "auto" picks, for each (x, y) pair, the (phi_l, theta_l) form when
        |k| max(x, y) < 1 and the Hankel-product form otherwise
    """
    _check_l(l)
    _check_x(x)
    _check_x(y)
    k = complex(k)
    if form == "auto":
        if k == 0:
            value = _green_phi_theta(l, k, x, y)
        else:
            dist = np.abs(np.asarray(x, dtype=float) - np.asarray(y, dtype=float))
            with np.errstate(over="ignore", invalid="ignore"):
                value = green_free_scaled(l, k, x, y) * np.exp(abs(k.imag) * dist)
    elif form == "phi_theta":
        value = _green_phi_theta(l, k, x, y)
    elif form == "hankel":
        if k == 0:
            raise DomainError("The Hankel form of G_l needs k != 0")
        dist = np.abs(np.asarray(x, dtype=float) - np.asarray(y, dtype=float))
        value = _green_hankel_scaled(l, k, x, y) * np.exp(abs(k.imag) * dist)
    else:
        raise ValueError(f"Unknown form {form!r}")
    return complex(value) if np.ndim(value) == 0 else value


def green_free_scaled(l: float, k: complex, x, y):
    """G_l(k^2, x, y) exp(-|Im k| |x - y|), free of overflow for complex k."""
    k = complex(k)
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    if k == 0:
        return _green_phi_theta(l, k, x, y)
    small = np.abs(k) * np.maximum(x, y) < GREEN_SWITCH
    dist = np.abs(x - y)
    with np.errstate(all="ignore"):
        direct = _green_phi_theta(l, k, x, y) * np.exp(-abs(k.imag) * dist)
        hankel = _green_hankel_scaled(l, k, x, y)
    return np.where(small, direct, hankel)


def _green_dk_direct(l, k, x, y):
    """d/dk G_l from the scaled (phi_l, theta_l) blocks, times exp(-|Im k| (x+y))."""
    z = k**2
    w = canonical_root(z)
    phi_x = phi_l_scaled(l, w, x)[0]
    phi_y = phi_l_scaled(l, w, y)[0]
    theta_x = theta_l_scaled(l, z, x)[0]
    theta_y = theta_l_scaled(l, z, y)[0]
    phi_dk_x = -k * x * phi_l_scaled(l + 1, w, x)[0]
    phi_dk_y = -k * y * phi_l_scaled(l + 1, w, y)[0]
    return (
        phi_dk_x * theta_y
        + phi_x * theta_l_dk_scaled(l, k, y)
        - phi_dk_y * theta_x
        - phi_y * theta_l_dk_scaled(l, k, x)
    )


def _green_dk_hankel_scaled(l, k, x, y):
    """d/dk of the Hankel-product form of G_l, times exp(-|Im k| |x - y|)."""
    nu = l + 0.5
    sign = 1.0
    # G_l is even in k
    if k.imag < 0 or (k.imag == 0 and k.real < 0):
        k, sign = -k, -1.0
    s = k.imag
    h1 = special.hankel1e
    h2 = special.hankel2e
    # terms of type H1(ky) H2(kx), then of type H1(kx) H2(ky)
    first = (
        y * h1(nu - 1, k * y) * h2(nu, k * x)
        + x * h1(nu, k * y) * h2(nu - 1, k * x)
        - (2 * nu / k) * h1(nu, k * y) * h2(nu, k * x)
    )
    second = (
        x * h1(nu - 1, k * x) * h2(nu, k * y)
        + y * h1(nu, k * x) * h2(nu - 1, k * y)
        - (2 * nu / k) * h1(nu, k * x) * h2(nu, k * y)
    )
    dist = np.abs(x - y)
    phase_1 = np.exp(1j * k.real * (y - x) + s * (x - y) - s * dist)
    phase_2 = np.exp(1j * k.real * (x - y) + s * (y - x) - s * dist)
    return sign * 0.25j * np.pi * np.sqrt(x * y) * (first * phase_1 - second * phase_2)


def green_free_dk(l: float, k: complex, x, y):
    """d/dk G_l(k^2, x, y).

    Same switch as ``green_free_scaled``: the (phi_l, theta_l) form for
    |k| max(x, y) < 1, the Hankel-product form otherwise.
    """
    _check_l(l)
    if k == 0:
        raise DomainError("d/dk G_l is evaluated at k != 0")
    k = complex(k)
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    s = abs(k.imag)
    small = np.abs(k) * np.maximum(x, y) < GREEN_SWITCH
    dist = np.abs(x - y)
    with np.errstate(all="ignore"):
        direct = _green_dk_direct(l, k, x, y) * np.exp(2 * s * np.minimum(x, y))
        hankel = _green_dk_hankel_scaled(l, k, x, y)
        value = np.where(small, direct, hankel) * np.exp(s * dist)
    return complex(value) if np.ndim(value) == 0 else value


def scaled_green_dk(l: float, eta, xi):
    """Dimensionless G with d/dk G_l(k^2, x, y) = (sqrt(xy)/k) G(kx, ky)."""
    nu = l + 0.5
    eta = np.asarray(eta, dtype=complex)
    xi = np.asarray(xi, dtype=complex)
    jv, yv = special.jv, special.yv
    return (np.pi / 2) * (
        eta * jv(nu + 1, eta) * yv(nu, xi)
        - xi * jv(nu + 1, xi) * yv(nu, eta)
        - xi * jv(nu, eta) * yv(nu - 1, xi)
        + eta * jv(nu, xi) * yv(nu - 1, eta)
    )


def scaled_green_dk_leading(eta, xi):
    """Leading large-argument behaviour cos(eta - xi)(sqrt(eta/xi) - sqrt(xi/eta))."""
    eta = np.asarray(eta, dtype=float)
    xi = np.asarray(xi, dtype=float)
    return np.cos(eta - xi) * (np.sqrt(eta / xi) - np.sqrt(xi / eta))


def free_weyl_m(l: float, k: complex) -> complex:
    """m_l(k^2) for Im k >= 0, with (-z)^nu = (-ik)^(2 nu)."""
    nu = l + 0.5
    k = complex(k)
    if k == 0:
        raise DomainError("m_l is singular at k = 0")
    if is_log_case(l):
        n = int(round(nu))
        return -(k ** (2 * n)) * 2 * cmath.log(-1j * k) / math.pi
    return -((-1j * k) ** (2 * nu)) / math.sin(nu * math.pi)
