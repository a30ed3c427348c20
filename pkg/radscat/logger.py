"""Logger."""

import logging
from pathlib import Path
from typing import Optional

from rich.console import Console
from rich.logging import RichHandler

from radscat.utils import StrOrPathLike

DATE_FORMAT = "[%Y-%m-%d %X]"
FORMAT_FILE = "%(asctime)s %(levelname)-7s %(message)s"


class _ConsoleHandler(RichHandler):
    """Rich handler for one side of the WARNING split (stderr above, stdout below)."""

    def __init__(self, stderr: bool):
        super().__init__(
            console=Console(stderr=stderr),
            show_time=False,
            markup=False,
            rich_tracebacks=True,
        )
        self.stderr = stderr

    def filter(self, record: logging.LogRecord) -> bool:
        return (record.levelno >= logging.WARNING) == self.stderr


def get_logger(
    name: Optional[str] = "radscat", level: int = logging.INFO
) -> logging.Logger:
    """Create/get a logger with rich formatting.

    Library functions call this whenever no logger is passed in, so the console
    handlers are attached only the first time a name is seen.
    """
    logger = logging.getLogger(name=name)
    logger.setLevel(level)
    if not any(isinstance(handler, _ConsoleHandler) for handler in logger.handlers):
        logger.addHandler(_ConsoleHandler(stderr=True))
        logger.addHandler(_ConsoleHandler(stderr=False))
    return logger


def add_logfile(logger: logging.Logger, fpath_log: StrOrPathLike) -> logging.Logger:
    """Also write the records of ``logger`` to ``fpath_log``."""
    fpath_log = Path(fpath_log)
    if not fpath_log.parent.exists():
        logger.warning(
            f"Creating log directory because it does not exist: {fpath_log.parent}"
        )
        fpath_log.parent.mkdir(parents=True, exist_ok=True)

    file_handler = logging.FileHandler(fpath_log)
    file_handler.setFormatter(logging.Formatter(FORMAT_FILE, datefmt=DATE_FORMAT))
    logger.addHandler(file_handler)
    logger.info(f"Writing the log to {fpath_log}")
    return logger


def capture_warnings(logger: logging.Logger) -> logging.Logger:
    """Send ``py.warnings`` records to the handlers of ``logger``.

    Numerical warnings (scipy quadrature, overflow) then end up next to the run
    log. ``logging.captureWarnings(True)`` must be called first.

    Returns
    -------
    logging.Logger
        The warnings logger
    """
    warnings_logger = logging.getLogger("py.warnings")
    for handler in logger.handlers:
        if handler not in warnings_logger.handlers:
            warnings_logger.addHandler(handler)
    return warnings_logger
