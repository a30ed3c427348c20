"""Parsers for the CLI."""

import logging
from argparse import ArgumentParser, HelpFormatter, _ActionsContainer, _SubParsersAction
from pathlib import Path

from radscat.config.main import Command
from radscat.utils import DNAME_LOGS, FNAME_MANIFEST

PROGRAM_NAME = "radscat"
COMMAND_SOLVE = Command.SOLVE.value
COMMAND_SCATTER = Command.SCATTER.value
COMMAND_SPECTRAL = Command.SPECTRAL.value
COMMAND_PROPAGATE = Command.PROPAGATE.value
COMMAND_CERTIFY = Command.CERTIFY.value
COMMAND_VERIFY = Command.VERIFY.value
COMMAND_PRESETS = "presets"

DEFAULT_VERBOSITY = "2"  # info
VERBOSITY_TO_LOG_LEVEL_MAP = {
    "0": logging.ERROR,
    "1": logging.WARNING,
    "2": logging.INFO,
    "3": logging.DEBUG,
}

RUN_COMMAND_DESCRIPTIONS = {
    COMMAND_SOLVE: "Tabulate the regular and Jost solutions on a (k, x) grid.",
    COMMAND_SCATTER: (
        "Compute the Jost function, F, the Weyl function, bound states"
        " and the zero-energy status."
    ),
    COMMAND_SPECTRAL: "Compute the spectral density and spectral function.",
    COMMAND_PROPAGATE: "Compute propagator kernels on a (t, x, y) grid.",
    COMMAND_CERTIFY: "Fit the t^(-1/2) decay of the continuous propagator kernel.",
    COMMAND_VERIFY: (
        "Run the bound and limit checks and write the traceability matrix."
    ),
}


def add_arg_config(parser: _ActionsContainer) -> _ActionsContainer:
    """Add a --config argument to the parser."""
    parser.add_argument(
        "--config",
        dest="fpath_config",
        type=Path,
        required=True,
        help="Path to the JSON run configuration.",
    )
    return parser


def add_arg_out(parser: _ActionsContainer) -> _ActionsContainer:
    """Add an --out argument to the parser."""
    parser.add_argument(
        "--out",
        dest="dpath_out",
        type=Path,
        required=False,
        help=(
            "Output directory (default: OUTPUT_DIR from the config)."
            f" Every file in it is listed in {FNAME_MANIFEST}, logs go to the"
            f" {DNAME_LOGS}/ directory next to it."
        ),
    )
    return parser


def add_arg_dry_run(parser: _ActionsContainer) -> _ActionsContainer:
    """Add a --dry-run argument to the parser."""
    parser.add_argument(
        "--dry-run",
        action="store_true",
        help="Compute and log but do not write any file.",
    )
    return parser


def add_arg_help(parser: _ActionsContainer) -> _ActionsContainer:
    """Add a --help argument to the parser."""
    parser.add_argument(
        "-h",
        "--help",
        action="help",
        help="Show this help message and exit.",
    )
    return parser


def add_arg_verbosity(parser: _ActionsContainer) -> _ActionsContainer:
    """Add a --verbosity argument to the parser."""

    def _verbosity_to_log_level(verbosity: str):
        try:
            return VERBOSITY_TO_LOG_LEVEL_MAP[verbosity]
        except KeyError:
            parser.error(
                f"Invalid verbosity level: {verbosity}."
                f" Valid levels are {list(VERBOSITY_TO_LOG_LEVEL_MAP.keys())}."
            )

    parser.add_argument(
        "--verbosity",
        type=_verbosity_to_log_level,
        default=DEFAULT_VERBOSITY,
        help=(
            "Verbosity level, from 0 (least verbose) to 3 (most verbose)."
            f" Default: {DEFAULT_VERBOSITY}."
        ),
    )
    return parser


def add_subparser_run_command(
    subparsers: _SubParsersAction,
    command: str,
    formatter_class: type[HelpFormatter] = HelpFormatter,
) -> ArgumentParser:
    """Add subparser for a command that reads a run configuration."""
    description = RUN_COMMAND_DESCRIPTIONS[command]
    parser = subparsers.add_parser(
        command,
        description=description,
        help=description,
        formatter_class=formatter_class,
        add_help=False,
    )
    parser = add_arg_config(parser)
    parser = add_arg_out(parser)
    return parser


def add_subparser_presets(
    subparsers: _SubParsersAction,
    formatter_class: type[HelpFormatter] = HelpFormatter,
) -> ArgumentParser:
    """Add subparser for presets command."""
    description = "List the potential presets and their reference solutions."
    parser = subparsers.add_parser(
        COMMAND_PRESETS,
        description=description,
        help=description,
        formatter_class=formatter_class,
        add_help=False,
    )
    return parser


def get_global_parser(
    formatter_class: type[HelpFormatter] = HelpFormatter,
) -> ArgumentParser:
    """Get the global parser."""
    global_parser = ArgumentParser(
        prog=PROGRAM_NAME,
        description=(
            "Scattering data, propagator kernels and decay certificates"
            " for half-line radial Schrodinger operators."
        ),
        epilog=(
            f"Run '{PROGRAM_NAME} COMMAND --help'"
            " for more information on a subcommand."
        ),
        formatter_class=formatter_class,
        add_help=False,
    )
    add_arg_help(global_parser)

    # subcommand parsers
    subparsers = global_parser.add_subparsers(
        title="Subcommands",
        dest="command",
        required=True,
    )
    for command in RUN_COMMAND_DESCRIPTIONS:
        add_subparser_run_command(subparsers, command, formatter_class=formatter_class)
    add_subparser_presets(subparsers, formatter_class=formatter_class)

    # add common/global options to subcommand parsers
    for parser in list(subparsers.choices.values()):
        common_arg_group = parser.add_argument_group("Global options")
        add_arg_verbosity(common_arg_group)
        add_arg_dry_run(common_arg_group)
        add_arg_help(common_arg_group)

    return global_parser
