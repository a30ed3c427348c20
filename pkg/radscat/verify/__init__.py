"""Sampled checks of the solution and Jost-function estimates."""

from .checks import (
    CHECK_IDS,
    CHECKS,
    BoundCheck,
    BoundCheckReport,
    LimitCheck,
    SampleGrid,
    check_bound,
    get_check,
    sample_grids,
)
from .suite import SuiteResult, run_suite
