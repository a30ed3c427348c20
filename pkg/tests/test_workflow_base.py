"""Tests for the workflow base classes."""

import json
import logging
from pathlib import Path

import pytest

from radscat.config.main import Command, RunConfig
from radscat.errors import ConfigError, HypothesisViolationError
from radscat.logger import get_logger
from radscat.utils import load_json, sha256_file
from radscat.workflows.base import BaseRunWorkflow, BaseWorkflow

from .conftest import datetime_fixture  # noqa F401
from .conftest import write_config

K_GRID = {"VALUES": [1.0, 2.0]}


class DummyWorkflow(BaseRunWorkflow):
    command = Command.SCATTER

    def __init__(self, *args, fail: bool = False, **kwargs):
        super().__init__(*args, **kwargs)
        self.fail = fail

    def run_main(self, **kwargs):
        self.save_json_file({"value": 0.1}, "report.json")
        if self.fail:
            raise RuntimeError("main part failed")


@pytest.fixture(params=[get_logger("my_logger"), None], scope="function")
def workflow(request: pytest.FixtureRequest, tmp_path: Path) -> DummyWorkflow:
    fpath_config = write_config(tmp_path, COMMAND="scatter", K_GRID=K_GRID)
    workflow = DummyWorkflow(
        fpath_config, dpath_out=tmp_path / "out", logger=request.param
    )
    workflow.logger.setLevel(logging.DEBUG)  # capture all logs
    return workflow


def test_abstract_class():
    with pytest.raises(TypeError, match="Can't instantiate abstract class"):
        BaseWorkflow(None)


def test_init(workflow: DummyWorkflow):
    assert workflow.name == "scatter"
    assert isinstance(workflow.logger, logging.Logger)
    assert isinstance(workflow.config, RunConfig)
    assert str(workflow.problem) == "ProblemSpec(l=0, q=free)"


def test_generate_fpath_log(workflow: DummyWorkflow, datetime_fixture):  # noqa F811
    dpath_logs = workflow.dpath_out.resolve().parent / "logs"
    assert workflow.generate_fpath_log() == dpath_logs / "out-scatter-20240404_1234.log"
    assert (
        workflow.generate_fpath_log("other")
        == dpath_logs / "out-other-20240404_1234.log"
    )


def test_config_object(tmp_path: Path):
    config = RunConfig(COMMAND="scatter", K_GRID=K_GRID, OUTPUT_DIR=tmp_path)
    workflow = DummyWorkflow(config)
    assert workflow.config is config
    assert workflow.fpath_config is None
    assert workflow.dpath_out == tmp_path


def test_dpath_out_missing():
    workflow = DummyWorkflow(RunConfig(COMMAND="scatter", K_GRID=K_GRID))
    with pytest.raises(ConfigError, match="No output directory"):
        workflow.dpath_out


def test_config_not_found(tmp_path: Path):
    workflow = DummyWorkflow(tmp_path / "fake.json", dpath_out=tmp_path)
    with pytest.raises(ConfigError, match="Config file not found"):
        workflow.config


def test_config_invalid_json(tmp_path: Path):
    fpath_config = tmp_path / "config.json"
    fpath_config.write_text("{")
    workflow = DummyWorkflow(fpath_config, dpath_out=tmp_path)
    with pytest.raises(ConfigError, match="not valid JSON"):
        workflow.config


def test_config_invalid(tmp_path: Path):
    fpath_config = write_config(tmp_path, COMMAND="scatter", K_GRID=K_GRID, L=-1)
    workflow = DummyWorkflow(fpath_config, dpath_out=tmp_path)
    with pytest.raises(ConfigError, match="Invalid config file") as exc_info:
        workflow.config
    assert exc_info.value.exit_code == 2
    assert exc_info.value.details["errors"]


def test_config_wrong_command(tmp_path: Path):
    fpath_config = write_config(tmp_path, COMMAND="spectral", LAMBDA_GRID=K_GRID)
    workflow = DummyWorkflow(fpath_config, dpath_out=tmp_path)
    with pytest.raises(ConfigError, match="not 'scatter'"):
        workflow.config


def test_run_setup(workflow: DummyWorkflow, caplog: pytest.LogCaptureFixture):
    workflow.run_setup()
    assert "BEGIN" in caplog.text
    assert workflow.dpath_out.is_dir()
    saved = RunConfig.load(workflow.dpath_out / "config.json")
    assert saved == workflow.config


def test_run_setup_hypothesis(tmp_path: Path):
    config = RunConfig(COMMAND="scatter", K_GRID=K_GRID, POTENTIAL="power(1,3,1)")
    workflow = DummyWorkflow(config, dpath_out=tmp_path / "out")
    with pytest.raises(HypothesisViolationError):
        workflow.run_setup()
    assert not (tmp_path / "out").exists()


def test_run_cleanup(workflow: DummyWorkflow, caplog: pytest.LogCaptureFixture):
    workflow.run_cleanup()
    assert "END" in caplog.text


def test_run(workflow: DummyWorkflow):
    assert workflow.run() is None
    manifest = load_json(workflow.dpath_out / "manifest.json")
    assert manifest["command"] == "scatter"
    assert [entry["path"] for entry in manifest["files"]] == [
        "config.json",
        "report.json",
    ]
    entry = manifest["files"][1]
    assert entry["sha256"] == sha256_file(workflow.dpath_out / "report.json")
    assert entry["bytes"] == (workflow.dpath_out / "report.json").stat().st_size


def test_run_manifest_on_failure(tmp_path: Path):
    fpath_config = write_config(tmp_path, COMMAND="scatter", K_GRID=K_GRID)
    workflow = DummyWorkflow(fpath_config, dpath_out=tmp_path / "out", fail=True)
    with pytest.raises(RuntimeError, match="main part failed"):
        workflow.run()
    manifest = load_json(tmp_path / "out" / "manifest.json")
    assert "report.json" in [entry["path"] for entry in manifest["files"]]


def test_run_dry_run(tmp_path: Path, caplog: pytest.LogCaptureFixture):
    fpath_config = write_config(tmp_path, COMMAND="scatter", K_GRID=K_GRID)
    workflow = DummyWorkflow(fpath_config, dpath_out=tmp_path / "out", dry_run=True)
    workflow.run()
    assert not (tmp_path / "out").exists()
    assert "dry run" in caplog.text
    assert workflow.write_manifest() is None


def test_save_json_file(workflow: DummyWorkflow):
    fpath = workflow.save_json_file({"a": [1, 2]}, "a.json")
    assert json.loads(fpath.read_text()) == {"a": [1, 2]}


def test_mkdir_file_exists(workflow: DummyWorkflow, tmp_path: Path):
    fpath = tmp_path / "file"
    fpath.touch()
    with pytest.raises(FileExistsError, match="not a directory"):
        workflow.mkdir(fpath)
