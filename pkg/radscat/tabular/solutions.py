"""Table of regular and Jost solutions."""

from pydantic import Field

from radscat.tabular.base import BaseTabular, BaseTabularModel
from radscat.utils import FIELD_DESCRIPTION_MAP


class SolutionModel(BaseTabularModel):
    """phi(k^2, x) and f(k, x) with their x-derivatives at one (k, x)."""

    k: float = Field(gt=0, description=FIELD_DESCRIPTION_MAP["k"])
    x: float = Field(gt=0, description=FIELD_DESCRIPTION_MAP["x"])
    re_phi: float = Field(description="Real part of the regular solution")
    im_phi: float = Field(description="Imaginary part of the regular solution")
    re_phi_dx: float = Field(description="Real part of d/dx phi")
    im_phi_dx: float = Field(description="Imaginary part of d/dx phi")
    re_f: float = Field(description="Real part of the Jost solution")
    im_f: float = Field(description="Imaginary part of the Jost solution")
    re_f_dx: float = Field(description="Real part of d/dx f")
    im_f_dx: float = Field(description="Imaginary part of d/dx f")


class SolutionTable(BaseTabular):
    """Solutions on a (k, x) grid."""

    col_k = "k"
    col_x = "x"
    index_cols = [col_k, col_x]

    _metadata = BaseTabular._metadata + ["col_k", "col_x", "index_cols"]

    model = SolutionModel
