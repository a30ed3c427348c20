"""Jost function, Weyl function, spectral measure, bound states and resonances."""

from .bound_states import (
    BoundState,
    bound_states,
    norming_constant,
    norming_constant_residue,
)
from .data import ScatteringData, compute_scattering_data
from .jost import (
    jost_function,
    jost_prefactor,
    normalized_jost_F,
    normalized_jost_F_dk,
)
from .resonance import (
    ResonanceReport,
    ResonanceStatus,
    resonance_status,
    resonant_coupling,
    sup_jost_F,
)
from .spectral import SpectralMeasure, free_cumulative, free_density, spectral_measure
from .weyl import g_function, weyl_m
