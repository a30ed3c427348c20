"""Table of bound-check outcomes."""

from typing import Optional

import pandas as pd
from pydantic import Field, field_validator

from radscat.tabular.base import BaseTabular, BaseTabularModel
from radscat.utils import FIELD_DESCRIPTION_MAP

STATUS_PASS = "pass"
STATUS_FAIL = "fail"
STATUS_INCONCLUSIVE = "inconclusive"
STATUS_SKIPPED = "skipped"
CHECK_STATUSES = (STATUS_PASS, STATUS_FAIL, STATUS_INCONCLUSIVE, STATUS_SKIPPED)


class CheckModel(BaseTabularModel):
    """Outcome of one check for one (potential, l) pair."""

    lemma_id: str = Field(description=FIELD_DESCRIPTION_MAP["lemma_id"])
    potential_id: str = Field(description=FIELD_DESCRIPTION_MAP["potential_id"])
    l: float = Field(gt=-0.5, description=FIELD_DESCRIPTION_MAP["l"])
    status: str = Field(description="Outcome of the check")
    fitted_C: Optional[float] = Field(
        default=None, description="Constant fitted on the coarse grid"
    )
    max_ratio: Optional[float] = Field(
        default=None, description="Largest observed/envelope ratio on the fine grid"
    )

    @field_validator("status")
    @classmethod
    def check_status(cls, value: str):
        """Check that a status field has a valid value."""
        if value not in CHECK_STATUSES:
            raise ValueError(
                f"Invalid status '{value}'. Must be one of: {CHECK_STATUSES}."
            )
        return value


class CheckTable(BaseTabular):
    """Check outcomes, one row per (lemma_id, potential_id, l)."""

    col_lemma_id = "lemma_id"
    col_potential_id = "potential_id"
    col_l = "l"
    col_status = "status"

    status_pass = STATUS_PASS
    status_fail = STATUS_FAIL
    status_inconclusive = STATUS_INCONCLUSIVE
    status_skipped = STATUS_SKIPPED

    index_cols = [col_lemma_id, col_potential_id, col_l]

    _metadata = BaseTabular._metadata + [
        "col_lemma_id",
        "col_potential_id",
        "col_l",
        "col_status",
        "status_pass",
        "status_fail",
        "status_inconclusive",
        "status_skipped",
        "index_cols",
    ]

    model = CheckModel

    def column_label(self) -> pd.Series:
        """Matrix column label ``<potential_id> l=<l>`` for each row."""
        return self[self.col_potential_id] + " l=" + self[self.col_l].map("{:g}".format)

    def traceability_matrix(
        self, lemma_ids: Optional[list[str]] = None
    ) -> pd.DataFrame:
        """Statuses with lemma ids as rows and (potential, l) as columns.

        Rows follow ``lemma_ids`` when given, columns the order of first
        appearance; missing cells are empty strings.
        """
        data = pd.DataFrame(
            {
                self.col_lemma_id: self[self.col_lemma_id].to_numpy(),
                "column": self.column_label().to_numpy(),
                self.col_status: self[self.col_status].to_numpy(),
            }
        )
        columns = list(dict.fromkeys(data["column"]))
        matrix = data.pivot(
            index=self.col_lemma_id, columns="column", values=self.col_status
        )
        if lemma_ids is None:
            lemma_ids = list(dict.fromkeys(data[self.col_lemma_id]))
        matrix = matrix.reindex(index=lemma_ids, columns=columns).fillna("")
        matrix.columns.name = None
        return matrix

    def all_passed(self) -> bool:
        """True if every non-skipped row passed."""
        statuses = self[self.col_status]
        ran = statuses[statuses != self.status_skipped]
        return bool((ran == self.status_pass).all())
