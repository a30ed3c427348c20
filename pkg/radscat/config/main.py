"""Run configuration."""

from __future__ import annotations

from enum import Enum
from pathlib import Path
from typing import Any, Optional

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, model_validator
from typing_extensions import Self

from radscat.utils import StrOrPathLike, load_json, make_grid


class Command(str, Enum):
    """Commands that read a run configuration."""

    SOLVE = "solve"
    SCATTER = "scatter"
    SPECTRAL = "spectral"
    PROPAGATE = "propagate"
    CERTIFY = "certify"
    VERIFY = "verify"


# grids each command cannot run without
REQUIRED_GRIDS = {
    Command.SOLVE: ("K_GRID", "X_GRID"),
    Command.SCATTER: ("K_GRID",),
    Command.SPECTRAL: ("LAMBDA_GRID",),
    Command.PROPAGATE: ("T_GRID", "X_GRID"),
    Command.CERTIFY: ("T_GRID", "X_GRID"),
    Command.VERIFY: (),
}


class GridSpec(BaseModel):
    """Schema for a 1D grid, given either by explicit values or by a range."""

    START: Optional[float] = Field(default=None, description="First grid point")
    STOP: Optional[float] = Field(default=None, description="Last grid point")
    NUM: Optional[int] = Field(default=None, ge=1, description="Number of points")
    SPACING: str = Field(
        default="linear",
        pattern="^(linear|log)$",
        description='Spacing between START and STOP, "linear" or "log"',
    )
    VALUES: Optional[list[float]] = Field(
        default=None,
        description="Explicit grid values (cannot be combined with START/STOP/NUM)",
    )

    model_config = ConfigDict(extra="forbid")

    @model_validator(mode="after")
    def validate_and_process(self) -> Self:
        """Check that the grid is well defined and strictly increasing."""
        range_fields = (self.START, self.STOP, self.NUM)
        if self.VALUES is not None:
            if any(value is not None for value in range_fields):
                raise ValueError("Cannot specify both VALUES and START/STOP/NUM")
        elif any(value is None for value in range_fields):
            raise ValueError("Either VALUES or all of START, STOP and NUM are required")
        elif self.SPACING == "log" and self.START <= 0:
            raise ValueError(f"Log-spaced grids need START > 0, got {self.START}")

        values = self.values()
        if len(values) == 0:
            raise ValueError("Grid is empty")
        if np.any(np.diff(values) <= 0):
            raise ValueError(f"Grid must be strictly increasing, got {values.tolist()}")
        return self

    def values(self) -> np.ndarray:
        """Return the grid as an array."""
        if self.VALUES is not None:
            return np.asarray(self.VALUES, dtype=float)
        return make_grid(self.START, self.STOP, self.NUM, self.SPACING)


class SolverSettings(BaseModel):
    """Settings for the Volterra solvers."""

    NODES_PER_PANEL: int = Field(
        default=16, ge=4, description="Gauss-Legendre nodes per quadrature panel"
    )
    MAX_PANEL_WIDTH: float = Field(default=0.5, gt=0, description="Widest panel")
    PANEL_WAVES: float = Field(
        default=2.5,
        gt=0,
        description="Panel width is at most PANEL_WAVES/(1+|k|)",
    )
    GRADING_LEVELS: int = Field(
        default=20, ge=0, description="Geometric refinement levels near x = 0"
    )
    REL_TOL: float = Field(
        default=1e-13,
        gt=0,
        description="Stop when the newest term is below REL_TOL times the sum",
    )
    MAX_ITERATIONS: int = Field(default=60, ge=1, description="Iteration cap")
    TRUNCATION_TOL: float = Field(
        default=1e-12,
        gt=0,
        description="Truncation radius is the smallest x with tail moment below this",
    )

    model_config = ConfigDict(extra="forbid", frozen=True)


class KernelSettings(BaseModel):
    """Settings for propagator kernels."""

    ROUTE: str = Field(
        default="full",
        pattern="^(free|lowpass|highpass|full|discrete)$",
        description="Kernel route of the propagate command",
    )
    K0: Optional[float] = Field(
        default=None,
        gt=0,
        description="Low/high energy split (estimated from the Born series if unset)",
    )
    LOW_PANEL_WIDTH: float = Field(
        default=0.25, gt=0, description="Largest amplitude panel width below 3 k0"
    )
    HIGH_PANEL_WIDTH: float = Field(
        default=0.25, gt=0, description="Largest amplitude panel width above k0"
    )
    NODES_PER_PANEL: int = Field(
        default=12, ge=4, description="Interpolation nodes per amplitude panel"
    )
    RESONANCE_THRESHOLD: float = Field(
        default=1e-4,
        gt=0,
        lt=1,
        description="Zero-energy threshold on |F(0)| for the resonance gate",
    )
    K_MAX: float = Field(
        default=80.0, gt=0, description="Largest momentum of the high-pass quadrature"
    )
    TAIL_TOL: float = Field(
        default=1e-8,
        gt=0,
        description="Target size of the neglected term in the k -> inf tail",
    )

    model_config = ConfigDict(extra="forbid", frozen=True)


class VerifySettings(BaseModel):
    """Settings for the bound-check suite."""

    LEMMA_IDS: Optional[list[str]] = Field(
        default=None, description="Subset of checks to run (all if unset)"
    )
    N_K: int = Field(default=49, ge=3, description="Coarse k-grid size")
    N_X: int = Field(default=31, ge=3, description="Coarse x-grid size")
    REFINEMENT: int = Field(
        default=2, ge=1, description="Fine grid has REFINEMENT times more points"
    )
    SLACK: float = Field(
        default=0.1, ge=0, description="Relative slack for the assertion stage"
    )
    POTENTIALS: Optional[list[str]] = Field(
        default=None,
        description="Potential presets for the matrix columns (POTENTIAL if unset)",
    )
    LS: Optional[list[float]] = Field(
        default=None, description="Angular momenta for the matrix columns (L if unset)"
    )

    model_config = ConfigDict(extra="forbid", frozen=True)


class RunConfig(BaseModel):
    """Schema for a run configuration."""

    COMMAND: Command = Field(description="Computation to run")
    L: float = Field(default=0.0, description="Angular momentum l > -1/2")
    POTENTIAL: str = Field(
        default="free",
        description=(
            'Potential preset, e.g. "free", "well(v0,a,b)", "expdecay(v0,a)", '
            '"power(c,p,b)" or "tabulated(path/to/file.csv)"'
        ),
    )
    K_GRID: Optional[GridSpec] = Field(default=None, description="Momentum grid")
    X_GRID: Optional[GridSpec] = Field(default=None, description="Position grid")
    Y_GRID: Optional[GridSpec] = Field(
        default=None, description="Second position grid (defaults to X_GRID)"
    )
    T_GRID: Optional[GridSpec] = Field(default=None, description="Time grid")
    LAMBDA_GRID: Optional[GridSpec] = Field(default=None, description="Energy grid")
    SOLVER: SolverSettings = Field(default_factory=SolverSettings)
    KERNEL: KernelSettings = Field(default_factory=KernelSettings)
    VERIFY: VerifySettings = Field(default_factory=VerifySettings)
    SEED: int = Field(default=0, ge=0, description="Seed for randomized sampling")
    N_JOBS: int = Field(default=1, description="Number of joblib workers")
    OUTPUT_DIR: Optional[Path] = Field(
        default=None, description="Output directory (overridden by --out)"
    )

    model_config = ConfigDict(extra="forbid")

    def _check_l(self) -> Self:
        if self.L <= -0.5:
            raise ValueError(f"Angular momentum must satisfy l > -1/2, got {self.L}")
        return self

    def _check_grids(self) -> Self:
        for name in REQUIRED_GRIDS[self.COMMAND]:
            if getattr(self, name) is None:
                raise ValueError(f"{name} is required for command {self.COMMAND.value}")
        for name in ("X_GRID", "Y_GRID", "T_GRID", "LAMBDA_GRID"):
            grid: Optional[GridSpec] = getattr(self, name)
            if grid is not None and grid.values()[0] <= 0:
                raise ValueError(f"{name} must be positive")
        return self

    @model_validator(mode="before")
    @classmethod
    def check_input(cls, data: Any):
        """Validate the raw input."""
        if isinstance(data, dict) and isinstance(data.get("COMMAND"), str):
            data["COMMAND"] = data["COMMAND"].lower()
        return data

    @model_validator(mode="after")
    def validate_and_process(self) -> Self:
        """Validate the configuration."""
        self._check_l()
        self._check_grids()
        return self

    def grid(self, name: str) -> Optional[np.ndarray]:
        """Return the values of a grid field, or None if it is not set."""
        if name == "Y_GRID" and self.Y_GRID is None:
            name = "X_GRID"
        spec: Optional[GridSpec] = getattr(self, name)
        return None if spec is None else spec.values()

    def save(self, fpath: StrOrPathLike, **kwargs):
        """Save the config to a JSON file.

        Parameters
        ----------
        fpath : radscat.utils.StrOrPathLike
            Path to the JSON file to write
        """
        fpath: Path = Path(fpath)
        if "indent" not in kwargs:
            kwargs["indent"] = 4
        fpath.parent.mkdir(parents=True, exist_ok=True)
        with open(fpath, "w") as file:
            file.write(self.model_dump_json(**kwargs))

    @classmethod
    def load(cls, path: StrOrPathLike) -> Self:
        """Load a run configuration from a file."""
        return cls(**load_json(path))
