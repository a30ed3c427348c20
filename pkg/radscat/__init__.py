"""Scattering theory and dispersive estimates for radial Schrödinger operators."""

from radscat.potentials import Potential, parse_potential
from radscat.problem import ProblemSpec, SolutionSample

__all__ = ["Potential", "ProblemSpec", "SolutionSample", "parse_potential"]
