"""Configuration models."""

from .main import (
    Command,
    GridSpec,
    KernelSettings,
    RunConfig,
    SolverSettings,
    VerifySettings,
)
