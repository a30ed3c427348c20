"""Perturbed regular, Jost and second solutions."""

from .grid import PanelGrid
from .oracle import ode_oracle
from .volterra import (
    JostSolution,
    RegularSolution,
    SecondSolution,
    jost_h_dk,
    jost_solution,
    jost_solution_dk,
    regular_solution,
    regular_solution_dk,
    second_normalization,
    second_solution,
    solve_jost,
    solve_regular,
    solve_second,
)
