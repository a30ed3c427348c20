"""Workflows behind the command-line interface."""

from .base import BaseRunWorkflow, BaseWorkflow
from .certify import CertifyWorkflow
from .presets import PresetsWorkflow
from .propagate import PropagateWorkflow
from .scatter import ScatterWorkflow
from .solve import SolveWorkflow
from .spectral import SpectralWorkflow
from .verify import VerifyWorkflow
