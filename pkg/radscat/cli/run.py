"""Command-line interface."""

import json
import logging
import sys
from typing import Sequence

from rich_argparse import RichHelpFormatter

from radscat.cli.parser import (
    COMMAND_CERTIFY,
    COMMAND_PRESETS,
    COMMAND_PROPAGATE,
    COMMAND_SCATTER,
    COMMAND_SOLVE,
    COMMAND_SPECTRAL,
    COMMAND_VERIFY,
    get_global_parser,
)
from radscat.errors import RadscatError
from radscat.logger import add_logfile, capture_warnings, get_logger
from radscat.workflows.certify import CertifyWorkflow
from radscat.workflows.presets import PresetsWorkflow
from radscat.workflows.propagate import PropagateWorkflow
from radscat.workflows.scatter import ScatterWorkflow
from radscat.workflows.solve import SolveWorkflow
from radscat.workflows.spectral import SpectralWorkflow
from radscat.workflows.verify import VerifyWorkflow

RUN_WORKFLOWS = {
    COMMAND_SOLVE: SolveWorkflow,
    COMMAND_SCATTER: ScatterWorkflow,
    COMMAND_SPECTRAL: SpectralWorkflow,
    COMMAND_PROPAGATE: PropagateWorkflow,
    COMMAND_CERTIFY: CertifyWorkflow,
    COMMAND_VERIFY: VerifyWorkflow,
}


def cli(argv: Sequence[str] = None) -> None:
    """Entrypoint to the command-line interface."""
    if argv is None:
        argv = sys.argv
    parser = get_global_parser(formatter_class=RichHelpFormatter)
    args = parser.parse_args(argv[1:])

    # common arguments
    command = args.command
    logger = get_logger(name=command, level=args.verbosity)
    dry_run = args.dry_run

    # to pass to all workflows
    workflow_kwargs = dict(logger=logger, dry_run=dry_run)

    try:
        if command == COMMAND_PRESETS:
            workflow = PresetsWorkflow(**workflow_kwargs)
        elif command in RUN_WORKFLOWS:
            workflow = RUN_WORKFLOWS[command](
                config=args.fpath_config,
                dpath_out=args.dpath_out,
                **workflow_kwargs,
            )
            # nothing is written in a dry run, not even the log
            if not dry_run:
                add_logfile(logger, workflow.generate_fpath_log())
        else:
            raise ValueError(f"Unsupported command: {command}")

        # capture warnings
        logging.captureWarnings(True)
        capture_warnings(workflow.logger)

        # run the workflow
        workflow.run()

    except RadscatError as exception:
        logger.error(f"{type(exception).__name__}: {exception.message}")
        print(json.dumps(exception.to_diagnostic(), default=str), file=sys.stderr)
        sys.exit(exception.exit_code)

    except Exception:
        logger.exception("Error when creating/running a workflow")
        sys.exit(1)
