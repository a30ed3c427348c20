"""Property-based tests of identities that hold for any admissible input."""

import math

import numpy as np
from hypothesis import given, settings
from hypothesis import strategies as st

from radscat.potentials import ExpDecayPotential, WellPotential, parse_potential
from radscat.propagator import free_kernel, free_resolvent

positions = st.floats(0.05, 20.0)
orders = st.floats(0.0, 4.0)
times = st.floats(0.1, 50.0)


@given(st.floats(-100.0, 100.0), st.floats(0.0, 10.0), st.floats(0.01, 10.0))
def test_well_id_round_trip(v0, a, width):
    potential = WellPotential(v0, a, a + width)
    parsed = parse_potential(potential.id)
    assert parsed.id == potential.id
    assert (parsed.v0, parsed.a, parsed.b) == (potential.v0, potential.a, potential.b)


@given(st.floats(-10.0, 10.0), st.floats(0.01, 10.0))
def test_expdecay_id_round_trip(v0, a):
    potential = ExpDecayPotential(v0, a)
    assert parse_potential(potential.id).id == potential.id


@settings(deadline=None)
@given(orders, times, positions, positions)
def test_free_kernel_symmetry(l, t, x, y):
    value = free_kernel(l, t, x, y)
    np.testing.assert_allclose(free_kernel(l, t, y, x), value, rtol=1e-12)
    np.testing.assert_allclose(free_kernel(l, -t, x, y), np.conj(value), rtol=1e-12)


@settings(deadline=None)
@given(times, positions, positions)
def test_free_kernel_l0_modulus(t, x, y):
    # |K| = |sin(xy / 2t)| / sqrt(pi t)
    expected = abs(math.sin(x * y / (2 * t))) / math.sqrt(math.pi * t)
    np.testing.assert_allclose(
        abs(free_kernel(0.0, t, x, y)), expected, rtol=1e-9, atol=1e-11
    )


@settings(deadline=None)
@given(orders, st.floats(0.1, 20.0), positions, positions)
def test_free_resolvent_symmetry(l, k, x, y):
    assert free_resolvent(l, k, x, y) == free_resolvent(l, k, y, x)
