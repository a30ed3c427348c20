"""Oscillatory integrals and the van der Corput/Beurling bound checkers."""

from .checks import (
    C2,
    BeurlingReport,
    BeurlingSweep,
    ConvolutionReport,
    DiscreteMeasure,
    VdcReport,
    beurling_check,
    beurling_sweep,
    convolution_check,
    h_family,
    h_family_dk,
    vdc_bound_check,
)
from .filon import (
    AmplitudeProfile,
    FilonRule,
    OscillatoryResult,
    filon_weights,
    fresnel_filon,
    fresnel_gaussian,
    graded_edges,
    ibp_tail,
    legendre_tail,
    panel_nodes,
)
