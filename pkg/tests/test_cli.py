"""Tests for the CLI."""

import json
from pathlib import Path

import pytest
import pytest_mock

from radscat.cli.run import cli
from radscat.errors import NonConvergenceError
from radscat.utils import load_json

from .conftest import write_config


def last_stderr_json(capsys: pytest.CaptureFixture) -> dict:
    return json.loads(capsys.readouterr().err.strip().splitlines()[-1])


def test_cli():
    with pytest.raises(SystemExit) as exception:
        cli(["radscat", "-h"])
    assert exception.value.code == 0


def test_cli_invalid():
    with pytest.raises(SystemExit) as exception:
        cli(["radscat", "--fake-arg"])
    assert exception.value.code != 0


def test_cli_presets(capsys: pytest.CaptureFixture):
    assert cli(["radscat", "presets"]) is None
    assert "well(v0,a,b)" in capsys.readouterr().out


def test_cli_scatter(tmp_path: Path):
    fpath_config = write_config(tmp_path, COMMAND="scatter", K_GRID={"VALUES": [1.0]})
    dpath_out = tmp_path / "out"
    cli(["radscat", "scatter", "--config", str(fpath_config), "--out", str(dpath_out)])

    manifest = load_json(dpath_out / "manifest.json")
    assert manifest["command"] == "scatter"
    assert {entry["path"] for entry in manifest["files"]} == {
        "config.json",
        "scattering.csv",
        "scattering.json",
    }
    # the log sits next to the output directory
    assert len(list((tmp_path / "logs").glob("out-scatter-*.log"))) == 1
    assert not (dpath_out / "logs").exists()


def test_cli_output_dir_from_config(tmp_path: Path):
    dpath_out = tmp_path / "from_config"
    fpath_config = write_config(
        tmp_path,
        COMMAND="scatter",
        K_GRID={"VALUES": [1.0]},
        OUTPUT_DIR=str(dpath_out),
    )
    cli(["radscat", "scatter", "--config", str(fpath_config)])
    assert (dpath_out / "manifest.json").exists()


def test_cli_dry_run(tmp_path: Path):
    fpath_config = write_config(tmp_path, COMMAND="scatter", K_GRID={"VALUES": [1.0]})
    dpath_out = tmp_path / "out"
    cli(
        [
            "radscat",
            "scatter",
            "--config",
            str(fpath_config),
            "--out",
            str(dpath_out),
            "--dry-run",
        ]
    )
    assert not dpath_out.exists()


@pytest.mark.parametrize(
    "fields",
    [
        {"COMMAND": "scatter"},
        {"COMMAND": "scatter", "K_GRID": {"VALUES": [1.0]}, "UNKNOWN": 1},
        {"COMMAND": "solve", "K_GRID": {"VALUES": [1.0]}, "X_GRID": {"VALUES": [1]}},
    ],
)
def test_cli_bad_config(tmp_path: Path, capsys: pytest.CaptureFixture, fields):
    fpath_config = write_config(tmp_path, **fields)
    dpath_out = str(tmp_path / "o")
    with pytest.raises(SystemExit) as exception:
        cli(["radscat", "scatter", "--config", str(fpath_config), "--out", dpath_out])
    assert exception.value.code == 2
    diagnostic = last_stderr_json(capsys)
    assert diagnostic["error"] == "ConfigError"
    assert diagnostic["exit_code"] == 2


def test_cli_missing_output_dir(tmp_path: Path, capsys: pytest.CaptureFixture):
    fpath_config = write_config(tmp_path, COMMAND="scatter", K_GRID={"VALUES": [1.0]})
    with pytest.raises(SystemExit) as exception:
        cli(["radscat", "scatter", "--config", str(fpath_config)])
    assert exception.value.code == 2
    assert "No output directory" in last_stderr_json(capsys)["message"]


def test_cli_hypothesis_violation(tmp_path: Path, capsys: pytest.CaptureFixture):
    fpath_config = write_config(
        tmp_path,
        COMMAND="verify",
        POTENTIAL="power(1,3,1)",
        VERIFY={"LEMMA_IDS": ["jost_modulus_asymptotics"]},
    )
    dpath_out = tmp_path / "out"
    args = ["verify", "--config", str(fpath_config), "--out", str(dpath_out)]
    with pytest.raises(SystemExit) as exception:
        cli(["radscat"] + args)
    assert exception.value.code == 3
    diagnostic = last_stderr_json(capsys)
    assert diagnostic["error"] == "HypothesisViolationError"
    assert diagnostic["details"]["skipped"][0]["potential"] == "power(1,3,1)"
    assert (dpath_out / "verify.json").exists()
    assert (dpath_out / "manifest.json").exists()


def test_cli_resonance_refusal(tmp_path: Path, capsys: pytest.CaptureFixture):
    fpath_config = write_config(
        tmp_path,
        COMMAND="certify",
        POTENTIAL="well(2.4674011002723395,0,1)",
        T_GRID={"VALUES": [1.0, 2.0, 4.0]},
        X_GRID={"VALUES": [1.0]},
    )
    dpath_out = str(tmp_path / "o")
    with pytest.raises(SystemExit) as exception:
        cli(["radscat", "certify", "--config", str(fpath_config), "--out", dpath_out])
    assert exception.value.code == 4
    assert last_stderr_json(capsys)["error"] == "ResonanceRefusalError"


def test_cli_rerun_is_byte_identical(tmp_path: Path):
    fpath_config = write_config(
        tmp_path,
        COMMAND="scatter",
        POTENTIAL="well(1,0,1)",
        K_GRID={"VALUES": [0.5, 2]},
    )
    dpath_out = tmp_path / "out"
    args = ["scatter", "--config", str(fpath_config), "--out", str(dpath_out)]

    cli(["radscat"] + args)
    first = {fpath.name: fpath.read_bytes() for fpath in dpath_out.iterdir()}
    cli(["radscat"] + args)
    second = {fpath.name: fpath.read_bytes() for fpath in dpath_out.iterdir()}
    assert first == second
    # everything in the output directory is in the manifest
    manifest = load_json(dpath_out / "manifest.json")
    assert {entry["path"] for entry in manifest["files"]} | {"manifest.json"} == set(
        second
    )
    assert len(list((tmp_path / "logs").glob("out-scatter-*.log"))) >= 1


def test_cli_non_convergence(
    tmp_path: Path, capsys: pytest.CaptureFixture, mocker: pytest_mock.MockerFixture
):
    mocker.patch(
        "radscat.workflows.scatter.compute_scattering_data",
        side_effect=NonConvergenceError("Volterra iteration stalled", {"k": 1.0}),
    )
    fpath_config = write_config(tmp_path, COMMAND="scatter", K_GRID={"VALUES": [1.0]})
    dpath_out = tmp_path / "out"
    args = ["scatter", "--config", str(fpath_config), "--out", str(dpath_out)]
    with pytest.raises(SystemExit) as exception:
        cli(["radscat"] + args)
    assert exception.value.code == 5
    diagnostic = last_stderr_json(capsys)
    assert diagnostic["error"] == "NonConvergenceError"
    assert diagnostic["details"] == {"k": 1.0}
    # the files written before the failure are still listed
    manifest = load_json(dpath_out / "manifest.json")
    assert [entry["path"] for entry in manifest["files"]] == ["config.json"]
