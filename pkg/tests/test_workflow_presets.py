"""Tests for the presets workflow."""

import io

import pytest
from rich.console import Console

from radscat.potentials import PRESETS
from radscat.workflows.presets import PresetsWorkflow


def test_build_table():
    table = PresetsWorkflow().build_table()
    assert table.row_count == len(PRESETS)
    assert [column.header for column in table.columns] == [
        "signature",
        "description",
        "reference",
    ]


def test_run(caplog: pytest.LogCaptureFixture):
    file = io.StringIO()
    workflow = PresetsWorkflow(console=Console(file=file, width=200))
    workflow.run()
    output = file.getvalue()
    for signature in ("well(v0,a,b)", "expdecay(v0,a)", "power(c,p,b)"):
        assert signature in output
    assert "BEGIN PRESETS" in caplog.text
