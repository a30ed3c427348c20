"""Classes for tabular outputs."""

from .checks import CheckTable
from .kernel import DecayTable, KernelTable
from .scattering import ScatteringTable, SpectralTable
from .solutions import SolutionTable
