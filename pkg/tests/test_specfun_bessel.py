"""Tests for the Bessel evaluators."""

import mpmath
import numpy as np
import pytest

from radscat.errors import AccuracyLossError, DomainError
from radscat.specfun.bessel import (
    asymptotic_band,
    bessel,
    bessel_dz,
    bessel_scaled,
    series_band,
)

MPMATH_FUNCTIONS = {
    "J": mpmath.besselj,
    "Y": mpmath.bessely,
    "H1": mpmath.hankel1,
    "H2": mpmath.hankel2,
}


def reference(kind, nu, z) -> complex:
    with mpmath.workdps(30):
        return complex(MPMATH_FUNCTIONS[kind](nu, mpmath.mpc(z)))


@pytest.mark.parametrize("kind", ["J", "Y", "H1", "H2"])
@pytest.mark.parametrize("nu", [0.5, 1.25, 3])
@pytest.mark.parametrize("method", ["auto", "series"])
@pytest.mark.parametrize("z", [2 + 1j, 0.3, 4 + 0.5j])
def test_small_argument(kind, nu, method, z):
    np.testing.assert_allclose(
        bessel(kind, nu, z, method=method), reference(kind, nu, z), rtol=1e-11
    )


@pytest.mark.parametrize("kind", ["J", "Y", "H1", "H2"])
@pytest.mark.parametrize("nu", [0.5, 1.25, 3])
@pytest.mark.parametrize("method", ["auto", "asymptotic"])
@pytest.mark.parametrize("z", [40 + 5j, 40, 60 - 1j])
def test_large_argument(kind, nu, method, z):
    np.testing.assert_allclose(
        bessel(kind, nu, z, method=method), reference(kind, nu, z), rtol=1e-11
    )


@pytest.mark.parametrize("nu", [0, 1, 2])
@pytest.mark.parametrize("z", [1.5, 0.2 + 0.7j])
def test_series_integer_order(nu, z):
    np.testing.assert_allclose(
        bessel("Y", nu, z, method="series"), reference("Y", nu, z), rtol=1e-11
    )


@pytest.mark.parametrize("kind", ["J", "Y"])
def test_auto_matches_asymptotic(kind):
    # |z| = 26 is inside the asymptotic band for nu = 0.5
    z = 26 + 0.5j
    amos = bessel(kind, 0.5, z, method="auto")
    asymptotic = bessel(kind, 0.5, z, method="asymptotic")
    np.testing.assert_allclose(amos, asymptotic, rtol=1e-11)


def test_bands():
    assert series_band(0.5) == 12.0
    assert series_band(20) == 30.0
    assert asymptotic_band(0) == 25.0
    assert asymptotic_band(4) == 33.0


@pytest.mark.parametrize(
    "method,z",
    [("series", 20.0), ("asymptotic", 5.0)],
)
def test_outside_band(method, z):
    with pytest.raises(AccuracyLossError, match="band"):
        bessel("J", 0.5, z, method=method)


def test_outside_imaginary_band():
    with pytest.raises(AccuracyLossError, match="certified band"):
        bessel("H1", 0.5, 30 + 60j, method="asymptotic")


def test_accuracy_loss_is_arithmetic_error():
    with pytest.raises(ArithmeticError):
        bessel("J", 0.5, 20.0, method="series")


def test_zero_argument():
    with pytest.raises(DomainError, match="z = 0"):
        bessel("J", 0.5, 0)
    with pytest.raises(DomainError):
        bessel_scaled("H1", 0.5, np.array([1.0, 0.0]))


@pytest.mark.parametrize(
    "kind,method,message",
    [("K", "auto", "Unknown Bessel kind"), ("J", "taylor", "Unknown method")],
)
def test_invalid_arguments(kind, method, message):
    with pytest.raises(ValueError, match=message):
        bessel(kind, 0.5, 1.0, method=method)


def test_array_argument():
    z = np.array([0.5, 2 + 1j, 40.0])
    values = bessel("J", 1.25, z)
    assert values.shape == (3,)
    np.testing.assert_allclose(values[1], reference("J", 1.25, 2 + 1j), rtol=1e-12)


def test_scalar_returns_complex():
    assert isinstance(bessel("J", 0.5, 1.0), complex)


@pytest.mark.parametrize("z", [3 + 2j, 50 + 20j])
def test_bessel_scaled(z):
    np.testing.assert_allclose(
        bessel_scaled("H1", 1.25, z) * np.exp(1j * z),
        reference("H1", 1.25, z),
        rtol=1e-11,
    )
    np.testing.assert_allclose(
        bessel_scaled("J", 1.25, z) * np.exp(abs(z.imag)),
        reference("J", 1.25, z),
        rtol=1e-11,
    )


@pytest.mark.parametrize("kind", ["J", "Y", "H1"])
@pytest.mark.parametrize("z", [0.7, 3 + 1j])
def test_bessel_dz(kind, z):
    # C'_nu = (C_{nu-1} - C_{nu+1}) / 2
    expected = (reference(kind, 0.25, z) - reference(kind, 2.25, z)) / 2
    np.testing.assert_allclose(bessel_dz(kind, 1.25, z), expected, rtol=1e-10)
