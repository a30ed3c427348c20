"""Problem specification and solution samples."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Optional

from radscat.base import Base
from radscat.config.main import SolverSettings
from radscat.errors import DomainError
from radscat.potentials import Potential, parse_potential


class ProblemSpec(Base):
    """The operator -d^2/dx^2 + l(l+1)/x^2 + q(x) on the half line.

    Parameters
    ----------
    l : float
        Angular momentum, l > -1/2
    potential : Potential | str
        Potential object or preset string
    settings : SolverSettings, optional
        Discretization and iteration settings for the solvers
    """

    def __init__(
        self,
        l: float,
        potential: Potential | str = "free",
        settings: Optional[SolverSettings] = None,
    ):
        l = float(l)
        if not l > -0.5:
            raise DomainError(
                f"Angular momentum must satisfy l > -1/2, got {l}", details={"l": l}
            )
        self.l = l
        self.potential = parse_potential(potential)
        self.settings = SolverSettings() if settings is None else settings

    @property
    def nu(self) -> float:
        """Bessel order l + 1/2."""
        return self.l + 0.5

    @property
    def q(self) -> Potential:
        return self.potential

    @property
    def is_free(self) -> bool:
        return self.potential.is_zero

    @cached_property
    def truncation_radius(self) -> float:
        """Radius X beyond which q is treated as zero."""
        return self.potential.truncation_radius(self.settings.TRUNCATION_TOL)

    def with_l(self, l: float) -> ProblemSpec:
        """Same potential and settings, different angular momentum."""
        return ProblemSpec(l, self.potential, self.settings)

    def with_potential(self, potential: Potential | str) -> ProblemSpec:
        return ProblemSpec(self.l, potential, self.settings)

    def __str__(self) -> str:
        return f"ProblemSpec(l={self.l:g}, q={self.potential.id})"


@dataclass(frozen=True)
class SolutionSample:
    """Value, x-derivative and optional k-derivative of a solution at one point."""

    value: complex
    dx: complex
    dk: Optional[complex] = None
    iterations_used: int = 0
    tail_bound: float = 0.0
    extra: dict = field(default_factory=dict, compare=False, repr=False)
