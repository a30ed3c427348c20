"""Tables of propagator kernels and decay certificates."""

from pydantic import Field, field_validator

from radscat.tabular.base import BaseTabular, BaseTabularModel
from radscat.utils import FIELD_DESCRIPTION_MAP

KERNEL_ROUTES = ("free", "lowpass", "highpass", "full", "discrete")


class KernelModel(BaseTabularModel):
    """One (t, x, y) sample of a propagator kernel."""

    t: float = Field(description=FIELD_DESCRIPTION_MAP["t"])
    x: float = Field(gt=0, description=FIELD_DESCRIPTION_MAP["x"])
    y: float = Field(gt=0, description=FIELD_DESCRIPTION_MAP["y"])
    re_K: float = Field(description="Real part of the kernel")
    im_K: float = Field(description="Imaginary part of the kernel")
    abs_K: float = Field(ge=0, description="Modulus of the kernel")
    route: str = Field(
        description=f"How the kernel was computed, one of {KERNEL_ROUTES}"
    )

    @field_validator("route")
    @classmethod
    def check_route(cls, value: str):
        """Check that the route is known."""
        if value not in KERNEL_ROUTES:
            raise ValueError(
                f"Invalid route '{value}'. Must be one of: {KERNEL_ROUTES}."
            )
        return value


class KernelTable(BaseTabular):
    """Kernel samples on a (t, x, y) grid."""

    col_t = "t"
    col_x = "x"
    col_y = "y"
    col_route = "route"
    index_cols = [col_route, col_t, col_x, col_y]

    _metadata = BaseTabular._metadata + [
        "col_t",
        "col_x",
        "col_y",
        "col_route",
        "index_cols",
    ]

    model = KernelModel


class DecayModel(BaseTabularModel):
    """Sup-norm of the kernel at one time."""

    t: float = Field(gt=0, description=FIELD_DESCRIPTION_MAP["t"])
    M: float = Field(ge=0, description="Largest weighted |kernel| over the (x, y) grid")
    sqrt_t_M: float = Field(ge=0, description="sqrt(t) * M")


class DecayTable(BaseTabular):
    """Decay of the kernel sup-norm in time."""

    col_t = "t"
    index_cols = [col_t]

    _metadata = BaseTabular._metadata + ["col_t", "index_cols"]

    model = DecayModel
