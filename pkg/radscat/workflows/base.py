"""Workflow utilities."""

from __future__ import annotations

import json
import logging
from abc import ABC, abstractmethod
from functools import cached_property
from pathlib import Path
from typing import Optional

import pandas as pd
from pydantic import ValidationError

from radscat.base import Base
from radscat.config.main import Command, RunConfig
from radscat.errors import ConfigError
from radscat.logger import get_logger
from radscat.problem import ProblemSpec
from radscat.tabular.base import BaseTabular
from radscat.utils import (
    DNAME_LOGS,
    FNAME_MANIFEST,
    StrOrPathLike,
    add_path_timestamp,
    build_manifest,
    save_csv,
    save_json,
)

LOG_SUFFIX = ".log"
FNAME_CONFIG = "config.json"


class BaseWorkflow(Base, ABC):
    """Base class with logging utilities."""

    def __init__(
        self,
        name: str,
        logger: Optional[logging.Logger] = None,
        dry_run: bool = False,
    ):
        """Initialize the workflow instance.

        Parameters
        ----------
        name : str
            Name of the workflow, used for logging.
        logger : logging.Logger, optional
            Logger, by default None
        dry_run : bool, optional
            If True, log what would be written without writing it, by default False
        """
        if logger is None:
            logger = get_logger(name=name)

        self.name = name
        self.logger = logger
        self.dry_run = dry_run

    def run_setup(self, **kwargs):
        """Run the setup part of the workflow."""
        self.logger.info(f"========== BEGIN {self.name.upper()} WORKFLOW ==========")
        self.logger.info(self)
        if self.dry_run:
            self.logger.info("Doing a dry run")

    @abstractmethod
    def run_main(self, **kwargs):
        """Run the main part of the workflow."""
        pass

    def run_cleanup(self, **kwargs):
        """Run the cleanup part of the workflow."""
        self.logger.info(f"========== END {self.name.upper()} WORKFLOW ==========")

    def run(self, **kwargs):
        """Run the workflow."""
        self.run_setup(**kwargs)
        self.run_main(**kwargs)
        self.run_cleanup(**kwargs)

    def mkdir(self, dpath, log_level=logging.INFO, **kwargs):
        """
        Create a directory (by default including parents).

        Do nothing if the directory already exists.
        """
        kwargs_to_use = {"parents": True, "exist_ok": True}
        kwargs_to_use.update(kwargs)

        dpath = Path(dpath)

        if not dpath.exists():
            self.logger.log(level=log_level, msg=f"Creating directory {dpath}")
            if not self.dry_run:
                dpath.mkdir(**kwargs_to_use)
        elif not dpath.is_dir():
            raise FileExistsError(
                f"Path already exists but is not a directory: {dpath}"
            )


class BaseRunWorkflow(BaseWorkflow):
    """A workflow driven by a run configuration that writes to an output directory.

    Every emitted file is listed in ``manifest.json`` with its sha-256 hash,
    also when the main part raises after writing some of them.
    """

    command: Command
    # the integrability hypothesis is checked before the main part
    require_hypothesis = True

    def __init__(
        self,
        config: RunConfig | StrOrPathLike,
        dpath_out: Optional[StrOrPathLike] = None,
        logger: Optional[logging.Logger] = None,
        dry_run: bool = False,
    ):
        super().__init__(name=self.command.value, logger=logger, dry_run=dry_run)
        self.fpath_config = None if isinstance(config, RunConfig) else Path(config)
        self._config = config if isinstance(config, RunConfig) else None
        self._dpath_out = None if dpath_out is None else Path(dpath_out)

    def __str__(self) -> str:
        return self._str_helper(
            components=[
                f"fpath_config={self.fpath_config}",
                f"dpath_out={self._dpath_out}",
            ],
            names=["dry_run"],
        )

    @cached_property
    def config(self) -> RunConfig:
        """Load and validate the run configuration."""
        if self._config is not None:
            config = self._config
        else:
            self.logger.info(f"Loading config from {self.fpath_config}")
            try:
                config = RunConfig.load(self.fpath_config)
            except FileNotFoundError:
                raise ConfigError(
                    f"Config file not found: {self.fpath_config}",
                    details={"path": str(self.fpath_config)},
                )
            except json.JSONDecodeError as exception:
                raise ConfigError(
                    f"Config file is not valid JSON: {exception}",
                    details={"path": str(self.fpath_config)},
                )
            except ValidationError as exception:
                raise ConfigError(
                    f"Invalid config file {self.fpath_config}",
                    details={
                        "errors": [
                            {
                                "loc": [str(part) for part in error["loc"]],
                                "msg": error["msg"],
                            }
                            for error in exception.errors()
                        ]
                    },
                )
        if config.COMMAND != self.command:
            raise ConfigError(
                f"Config is for command {config.COMMAND.value!r}"
                f", not {self.command.value!r}",
                details={"config": config.COMMAND.value, "cli": self.command.value},
            )
        return config

    @cached_property
    def dpath_out(self) -> Path:
        """Output directory from the CLI, else from the config."""
        if self._dpath_out is not None:
            return self._dpath_out
        if self.config.OUTPUT_DIR is not None:
            return Path(self.config.OUTPUT_DIR)
        raise ConfigError("No output directory: pass --out or set OUTPUT_DIR")

    @cached_property
    def problem(self) -> ProblemSpec:
        """The operator described by the config."""
        return ProblemSpec(self.config.L, self.config.POTENTIAL, self.config.SOLVER)

    def generate_fpath_log(self, fname_stem: Optional[str] = None) -> Path:
        """Generate a log file path next to (not inside) the output directory.

        ``<parent>/logs/<output dir name>-<stem>-<timestamp>.log``, so that
        reruns leave the output directory and its manifest unchanged.
        """
        if fname_stem is None:
            fname_stem = self.name
        dpath_out = self.dpath_out.resolve()
        return dpath_out.parent / DNAME_LOGS / add_path_timestamp(
            f"{dpath_out.name}-{fname_stem}{LOG_SUFFIX}"
        )

    def save_tabular_file(self, tabular: BaseTabular, fname: str) -> Path:
        """Save a table in the output directory."""
        fpath = self.dpath_out / fname
        if self.dry_run:
            self.logger.info(f"Not writing {fpath} since this is a dry run")
        else:
            tabular.save(fpath)
            self.logger.info(f"Saved {len(tabular)} rows to {fpath}")
        return fpath

    def save_csv_file(self, df: pd.DataFrame, fname: str, **kwargs) -> Path:
        """Save a plain dataframe in the output directory."""
        fpath = self.dpath_out / fname
        if self.dry_run:
            self.logger.info(f"Not writing {fpath} since this is a dry run")
        else:
            save_csv(df, fpath, **kwargs)
            self.logger.info(f"Saved to {fpath}")
        return fpath

    def save_json_file(self, obj: dict | list, fname: str) -> Path:
        """Save a JSON report in the output directory."""
        fpath = self.dpath_out / fname
        if self.dry_run:
            self.logger.info(f"Not writing {fpath} since this is a dry run")
        else:
            save_json(obj, fpath)
            self.logger.info(f"Saved to {fpath}")
        return fpath

    def write_manifest(self) -> Optional[Path]:
        """List every file of the output directory with its sha-256 hash."""
        if self.dry_run or not self.dpath_out.exists():
            return None
        fpath = self.dpath_out / FNAME_MANIFEST
        save_json(
            {"command": self.command.value, "files": build_manifest(self.dpath_out)},
            fpath,
        )
        self.logger.info(f"Wrote the manifest to {fpath}")
        return fpath

    def run_setup(self, **kwargs):
        """Validate the config and the problem, then create the output directory."""
        super().run_setup(**kwargs)
        config = self.config
        problem = self.problem
        self.logger.info(f"Problem: {problem}")
        if self.require_hypothesis:
            problem.q.require_hypothesis(problem.l, logger=self.logger)
        self.mkdir(self.dpath_out)
        if self.dry_run:
            return
        config.save(self.dpath_out / FNAME_CONFIG)

    def run(self, **kwargs):
        """Run the workflow; the manifest is written even if the main part fails."""
        self.run_setup(**kwargs)
        try:
            self.run_main(**kwargs)
        finally:
            self.write_manifest()
        self.run_cleanup(**kwargs)
