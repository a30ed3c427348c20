"""Tests for the errors module."""

import json

import pytest

from radscat.errors import (
    AccuracyLossError,
    ConfigError,
    DomainError,
    HypothesisViolationError,
    NonConvergenceError,
    RadscatError,
    ResonanceRefusalError,
)


@pytest.mark.parametrize(
    "error_class,exit_code",
    [
        (RadscatError, 1),
        (DomainError, 1),
        (AccuracyLossError, 1),
        (ConfigError, 2),
        (HypothesisViolationError, 3),
        (ResonanceRefusalError, 4),
        (NonConvergenceError, 5),
    ],
)
def test_exit_codes(error_class, exit_code):
    assert error_class("message").exit_code == exit_code


@pytest.mark.parametrize(
    "error_class,builtin",
    [
        (DomainError, ValueError),
        (AccuracyLossError, ArithmeticError),
        (NonConvergenceError, RuntimeError),
        (ConfigError, ValueError),
    ],
)
def test_builtin_bases(error_class, builtin):
    with pytest.raises(builtin):
        raise error_class("message")


def test_to_diagnostic():
    error = ResonanceRefusalError("refused", details={"abs_F0": 1e-9})
    diagnostic = error.to_diagnostic()
    assert diagnostic == {
        "error": "ResonanceRefusalError",
        "message": "refused",
        "exit_code": 4,
        "details": {"abs_F0": 1e-9},
    }
    # one JSON line
    assert "\n" not in json.dumps(diagnostic)


def test_details_default():
    error = NonConvergenceError("no")
    assert error.details == {}
    assert str(error) == "no"
