"""Workflow for listing the potential presets."""

from __future__ import annotations

import logging
from typing import Optional

from rich.console import Console
from rich.table import Table

from radscat.potentials import presets_table
from radscat.workflows.base import BaseWorkflow


class PresetsWorkflow(BaseWorkflow):
    """Print the potential presets and their reference solutions."""

    def __init__(
        self,
        logger: Optional[logging.Logger] = None,
        dry_run: bool = False,
        console: Optional[Console] = None,
    ):
        super().__init__(name="presets", logger=logger, dry_run=dry_run)
        self.console = Console() if console is None else console

    def __str__(self) -> str:
        return self._str_helper(names=["dry_run"])

    def build_table(self) -> Table:
        """Rich table with one row per preset."""
        table = Table(title="Potential presets")
        for column in ("signature", "description", "reference"):
            table.add_column(column)
        for row in presets_table():
            table.add_row(row["signature"], row["description"], row["reference"])
        return table

    def run_main(self, **kwargs):
        """Print the table."""
        self.console.print(self.build_table())
