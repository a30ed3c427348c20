"""Propagator kernels, Born series and the decay certificate."""

from .born import (
    born_contraction_ratio,
    born_partial_sum,
    born_term,
    born_terms,
    default_k0,
    free_resolvent,
    resolvent_kernel,
)
from .certificate import DecayReport, decay_certificate
from .cutoff import CutoffSpec, smooth_step
from .free import free_kernel, free_kernel_3d
from .kernels import (
    KernelGrid,
    discrete_kernel,
    evolve_state,
    kernel_full,
    kernel_highpass,
    kernel_lowpass,
    kernel_series,
    require_no_resonance,
    resolve_cutoff,
)
from .rl import (
    RlMeasure,
    measure_polynomial,
    rl_eval,
    rl_eval_dk,
    rl_measure,
    rl_measure_check,
    rl_recursion_residual,
)
from .timestep import crank_nicolson_evolve
