"""Special functions and free (q = 0) solutions."""

from .bessel import bessel, bessel_dz, bessel_scaled
from .free import (
    c_l,
    free_jost_function,
    free_solution,
    free_solution_dk,
    free_weyl_m,
    green_free,
    green_free_dk,
    green_free_scaled,
    is_log_case,
    scaled_green_dk,
    scaled_green_dk_leading,
)
