"""Tests for the verify workflow."""

from pathlib import Path

import pandas as pd
import pytest

from radscat.errors import ConfigError, HypothesisViolationError
from radscat.tabular.checks import CheckTable
from radscat.utils import load_json
from radscat.workflows.verify import (
    FNAME_CHECKS_TABLE,
    FNAME_TRACEABILITY,
    FNAME_VERIFY_REPORT,
    VerifyWorkflow,
)

from .conftest import write_config

LEMMA_IDS = ["tilde_phi_bound", "jost_modulus_asymptotics"]


def verify_config(dpath: Path, **verify_fields) -> Path:
    verify = {"LEMMA_IDS": LEMMA_IDS, "N_K": 7, "N_X": 7}
    verify.update(verify_fields)
    return write_config(dpath, COMMAND="verify", VERIFY=verify)


def test_problems(tmp_path: Path):
    fpath_config = verify_config(
        tmp_path, POTENTIALS=["free", "well(1,0,1)"], LS=[0.0, 1.0]
    )
    workflow = VerifyWorkflow(fpath_config, dpath_out=tmp_path / "out")
    assert [str(problem) for problem in workflow.problems] == [
        "ProblemSpec(l=0, q=free)",
        "ProblemSpec(l=1, q=free)",
        "ProblemSpec(l=0, q=well(1,0,1))",
        "ProblemSpec(l=1, q=well(1,0,1))",
    ]


def test_run_free(tmp_path: Path):
    dpath_out = tmp_path / "out"
    VerifyWorkflow(verify_config(tmp_path), dpath_out=dpath_out).run()

    report = load_json(dpath_out / FNAME_VERIFY_REPORT)
    assert report["pass"] is True
    assert report["lemma_ids"] == LEMMA_IDS
    table = CheckTable.load(dpath_out / FNAME_CHECKS_TABLE)
    assert table.all_passed()
    matrix = pd.read_csv(dpath_out / FNAME_TRACEABILITY)
    assert list(matrix.columns) == ["lemma_id", "free l=0"]
    assert list(matrix["lemma_id"]) == LEMMA_IDS


def test_run_unknown_id(tmp_path: Path):
    fpath_config = verify_config(tmp_path, LEMMA_IDS=["lemma_1"])
    with pytest.raises(ConfigError, match="Unknown check ids"):
        VerifyWorkflow(fpath_config, dpath_out=tmp_path / "out").run()


def test_run_hypothesis_violation(tmp_path: Path):
    fpath_config = verify_config(tmp_path, POTENTIALS=["free", "power(1,3,1)"])
    dpath_out = tmp_path / "out"
    with pytest.raises(HypothesisViolationError) as exc_info:
        VerifyWorkflow(fpath_config, dpath_out=dpath_out).run()
    skipped = exc_info.value.details["skipped"]
    assert skipped == [{"potential": "power(1,3,1)", "l": 0.0}]

    # the reports are written before raising
    report = load_json(dpath_out / FNAME_VERIFY_REPORT)
    statuses = [item["status"] for item in report["reports"]]
    assert statuses == ["pass", "pass", "skipped", "skipped"]
    manifest = load_json(dpath_out / "manifest.json")
    assert FNAME_VERIFY_REPORT in [entry["path"] for entry in manifest["files"]]
