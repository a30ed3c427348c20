"""Closed-form kernels of e^{-itH} for q = 0."""

from __future__ import annotations

import numpy as np
from scipy import special

from radscat.errors import DomainError


def free_kernel(l: float, t: float, x, y) -> np.ndarray:
    """i^{-nu}/(2it) e^{i(x^2+y^2)/4t} sqrt(xy) J_nu(xy/2t), nu = l + 1/2.

    Negative t gives the complex conjugate of the kernel at |t|.
    """
    if not l > -0.5:
        raise DomainError(f"Angular momentum must satisfy l > -1/2, got {l}")
    if t == 0:
        raise DomainError("The free kernel is singular at t = 0")
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    if np.any(x <= 0) or np.any(y <= 0):
        raise DomainError("The free kernel is evaluated at x, y > 0")
    if t < 0:
        return np.conj(free_kernel(l, -t, x, y))
    nu = l + 0.5
    prefactor = np.exp(-0.5j * np.pi * nu) / (2j * t)
    phase = np.exp(1j * (x**2 + y**2) / (4 * t))
    return prefactor * phase * np.sqrt(x * y) * special.jv(nu, x * y / (2 * t))


def free_kernel_3d(l: int, t: float, x, y) -> np.ndarray:
    """Radial kernel of the free 3D propagator in the l-th partial wave."""
    if float(l) != int(l) or l < 0:
        raise DomainError(
            f"The 3D partial-wave kernel needs an integer l >= 0, got {l}"
        )
    return free_kernel(int(l), t, x, y)
