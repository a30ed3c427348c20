"""Tables of scattering and spectral data."""

from typing import Optional

from pydantic import Field

from radscat.tabular.base import BaseTabular, BaseTabularModel
from radscat.utils import FIELD_DESCRIPTION_MAP


class ScatteringModel(BaseTabularModel):
    """One momentum k > 0 of the scattering data."""

    k: float = Field(gt=0, description=FIELD_DESCRIPTION_MAP["k"])
    re_f: float = Field(description="Real part of the Jost function f(k)")
    im_f: float = Field(description="Imaginary part of the Jost function f(k)")
    re_F: float = Field(description="Real part of F(k) = exp(-i pi l/2) k^l f(k)")
    im_F: float = Field(description="Imaginary part of F(k)")
    abs_F: float = Field(ge=0, description="|F(k)|")
    im_m: Optional[float] = Field(
        default=None, description="Imaginary part of the Weyl function m(k^2)"
    )


class ScatteringTable(BaseTabular):
    """Jost function, F and Im m on a momentum grid."""

    col_k = "k"
    index_cols = [col_k]

    _metadata = BaseTabular._metadata + ["col_k", "index_cols"]

    model = ScatteringModel


class SpectralModel(BaseTabularModel):
    """One energy lambda > 0 of the spectral measure."""

    lam: float = Field(
        gt=0, alias="lambda", description=FIELD_DESCRIPTION_MAP["lambda"]
    )
    density: float = Field(ge=0, description="Density of the continuous part")
    cumulative: float = Field(description="Spectral function rho(lambda)")


class SpectralTable(BaseTabular):
    """Spectral density and spectral function on an energy grid."""

    col_lambda = "lambda"
    index_cols = [col_lambda]

    _metadata = BaseTabular._metadata + ["col_lambda", "index_cols"]

    model = SpectralModel
