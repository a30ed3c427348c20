"""Tests for the certify workflow."""

import math
from pathlib import Path

import pandas as pd
import pytest

from radscat.utils import load_json
from radscat.workflows.certify import (
    FNAME_DECAY_REPORT,
    FNAME_DECAY_TABLE,
    CertifyWorkflow,
)

from .conftest import write_config


def test_run_free(tmp_path: Path):
    fpath_config = write_config(
        tmp_path,
        COMMAND="certify",
        T_GRID={"START": 1.0, "STOP": 100.0, "NUM": 5, "SPACING": "log"},
        X_GRID={"START": 0.5, "STOP": 20.0, "NUM": 40},
    )
    dpath_out = tmp_path / "out"
    CertifyWorkflow(fpath_config, dpath_out=dpath_out).run()

    report = load_json(dpath_out / FNAME_DECAY_REPORT)
    assert report["potential_id"] == "free"
    assert report["pass"] is True
    assert report["fitted_exponent"] == pytest.approx(-0.5, abs=0.01)
    assert max(report["sqrt_t_M"]) == pytest.approx(1 / math.sqrt(math.pi), rel=1e-2)

    table = pd.read_csv(dpath_out / FNAME_DECAY_TABLE)
    assert list(table.columns) == ["t", "M", "sqrt_t_M"]
    assert len(table) == 5


def test_run_dry_run(tmp_path: Path):
    fpath_config = write_config(
        tmp_path,
        COMMAND="certify",
        T_GRID={"VALUES": [1.0, 2.0, 4.0]},
        X_GRID={"VALUES": [1.0, 2.0]},
    )
    CertifyWorkflow(fpath_config, dpath_out=tmp_path / "out", dry_run=True).run()
    assert not (tmp_path / "out").exists()
