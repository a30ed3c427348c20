"""Tests for the run configuration."""

from contextlib import nullcontext
from pathlib import Path

import numpy as np
import pytest
from pydantic import ValidationError

from radscat.config.main import (
    Command,
    GridSpec,
    KernelSettings,
    RunConfig,
    SolverSettings,
    VerifySettings,
)
from radscat.utils import DPATH_EXAMPLES, FPATH_SAMPLE_CONFIG


@pytest.mark.parametrize(
    "data,is_valid",
    [
        ({"VALUES": [0.1, 1.0, 2.0]}, True),
        ({"START": 0.1, "STOP": 2.0, "NUM": 5}, True),
        ({"START": 0.1, "STOP": 100.0, "NUM": 5, "SPACING": "log"}, True),
        ({"START": 0.0, "STOP": 1.0, "NUM": 5, "SPACING": "log"}, False),
        ({"START": 0.1, "STOP": 2.0}, False),
        ({"VALUES": [0.1], "START": 0.1, "STOP": 2.0, "NUM": 5}, False),
        ({"VALUES": [1.0, 0.5]}, False),
        ({"VALUES": [1.0, 1.0]}, False),
        ({"VALUES": []}, False),
        ({"START": 0.1, "STOP": 2.0, "NUM": 5, "SPACING": "cubic"}, False),
        ({"VALUES": [1.0], "EXTRA": 1}, False),
    ],
)
def test_grid_spec(data, is_valid):
    with pytest.raises(ValidationError) if not is_valid else nullcontext():
        GridSpec(**data)


def test_grid_spec_values():
    np.testing.assert_allclose(
        GridSpec(START=1, STOP=100, NUM=3, SPACING="log").values(), [1, 10, 100]
    )
    np.testing.assert_allclose(GridSpec(VALUES=[0.5, 2]).values(), [0.5, 2])


def test_settings_defaults():
    kernel = KernelSettings()
    assert kernel.ROUTE == "full"
    assert kernel.K0 is None
    assert kernel.RESONANCE_THRESHOLD == 1e-4
    verify = VerifySettings()
    assert verify.N_K == 49 and verify.N_X == 31 and verify.REFINEMENT == 2
    assert SolverSettings().REL_TOL > 0


def test_settings_frozen():
    settings = SolverSettings()
    with pytest.raises(ValidationError):
        settings.REL_TOL = 1.0


@pytest.mark.parametrize("route", ["free", "lowpass", "highpass", "full", "discrete"])
def test_kernel_route(route):
    assert KernelSettings(ROUTE=route).ROUTE == route


def test_kernel_route_invalid():
    with pytest.raises(ValidationError):
        KernelSettings(ROUTE="born")


@pytest.mark.parametrize(
    "data,is_valid",
    [
        ({"COMMAND": "scatter", "K_GRID": {"VALUES": [1.0]}}, True),
        ({"COMMAND": "SCATTER", "K_GRID": {"VALUES": [1.0]}}, True),
        ({"COMMAND": "scatter"}, False),
        ({"COMMAND": "verify"}, True),
        ({"COMMAND": "verify", "L": -0.5}, False),
        ({"COMMAND": "verify", "L": -0.25}, True),
        ({"COMMAND": "verify", "SEED": -1}, False),
        ({"COMMAND": "fit"}, False),
        ({"COMMAND": "verify", "UNKNOWN": 1}, False),
        ({"COMMAND": "solve", "K_GRID": {"VALUES": [1.0]}}, False),
        (
            {
                "COMMAND": "solve",
                "K_GRID": {"VALUES": [1.0]},
                "X_GRID": {"VALUES": [0.5, 1.0]},
            },
            True,
        ),
        (
            {
                "COMMAND": "propagate",
                "T_GRID": {"VALUES": [0.0, 1.0]},
                "X_GRID": {"VALUES": [1.0]},
            },
            False,
        ),
        (
            {
                "COMMAND": "propagate",
                "T_GRID": {"VALUES": [1.0]},
                "X_GRID": {"VALUES": [-1.0, 1.0]},
            },
            False,
        ),
        ({"COMMAND": "spectral", "LAMBDA_GRID": {"VALUES": [0.5, 2.0]}}, True),
    ],
)
def test_run_config(data, is_valid):
    with pytest.raises(ValidationError) if not is_valid else nullcontext():
        RunConfig(**data)


def test_run_config_command_enum():
    config = RunConfig(COMMAND="Verify")
    assert config.COMMAND == Command.VERIFY


def test_run_config_grid():
    config = RunConfig(
        COMMAND="solve",
        K_GRID={"VALUES": [1.0, 2.0]},
        X_GRID={"START": 0.5, "STOP": 1.5, "NUM": 3},
    )
    np.testing.assert_allclose(config.grid("K_GRID"), [1.0, 2.0])
    np.testing.assert_allclose(config.grid("Y_GRID"), [0.5, 1.0, 1.5])
    assert config.grid("T_GRID") is None


def test_run_config_save_load(tmp_path: Path):
    config = RunConfig(
        COMMAND="scatter",
        POTENTIAL="well(1,0,1)",
        K_GRID={"VALUES": [0.5, 1.0]},
        KERNEL={"K0": 2.0},
    )
    fpath = tmp_path / "nested" / "config.json"
    config.save(fpath)
    assert RunConfig.load(fpath) == config


@pytest.mark.parametrize(
    "fpath", [FPATH_SAMPLE_CONFIG] + sorted(DPATH_EXAMPLES.glob("sample_config-*.json"))
)
def test_sample_configs(fpath: Path):
    RunConfig.load(fpath)


def test_sample_configs_cover_commands():
    commands = {RunConfig.load(f).COMMAND for f in DPATH_EXAMPLES.glob("*.json")}
    assert commands == set(Command)
