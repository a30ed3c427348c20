"""Exceptions raised by the library and mapped to CLI exit codes."""

from __future__ import annotations

from typing import Any, Optional


class RadscatError(Exception):
    """Base class for library errors."""

    exit_code = 1

    def __init__(self, message: str, details: Optional[dict[str, Any]] = None):
        super().__init__(message)
        self.message = message
        self.details = {} if details is None else dict(details)

    def to_diagnostic(self) -> dict[str, Any]:
        """Return a JSON-ready description of the error."""
        return {
            "error": type(self).__name__,
            "message": self.message,
            "exit_code": self.exit_code,
            "details": self.details,
        }


class DomainError(RadscatError, ValueError):
    """Argument outside the domain of a function (e.g. z = 0 for Bessel)."""


class AccuracyLossError(RadscatError, ArithmeticError):
    """No available evaluation regime certifies the requested tolerance."""


class NonConvergenceError(RadscatError, RuntimeError):
    """Iteration, root refinement, ODE integration or quadrature failed."""

    exit_code = 5


class HypothesisViolationError(RadscatError, ValueError):
    """The potential violates the integrability hypotheses."""

    exit_code = 3


class ResonanceRefusalError(RadscatError, RuntimeError):
    """Computation refused because of a (near) zero-energy resonance."""

    exit_code = 4


class ConfigError(RadscatError, ValueError):
    """Invalid run configuration."""

    exit_code = 2
