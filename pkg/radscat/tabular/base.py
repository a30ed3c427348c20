"""Row-validated DataFrames for the CSV outputs."""

from __future__ import annotations

from abc import ABC, abstractmethod
from typing import Any, Optional, Sequence

import pandas as pd
from pydantic import BaseModel, TypeAdapter, ValidationError, model_validator
from typing_extensions import Self

from radscat.utils import StrOrPathLike, save_csv


def _is_missing(value: Any) -> bool:
    if isinstance(value, Sequence) and not isinstance(value, str):
        return False
    return bool(pd.isna(value))


class BaseTabularModel(BaseModel):
    """Schema of one row of a table.

    Missing cells (NaN, NA, None) fall back to the field default when the field
    is optional and fail validation otherwise.
    """

    @model_validator(mode="before")
    @classmethod
    def drop_missing(cls, data: Any):
        """Replace missing cells before field validation."""
        if not isinstance(data, dict):
            return data
        optional = {
            name for name, info in cls.model_fields.items() if not info.is_required()
        }
        cleaned = {}
        for key, value in data.items():
            if not _is_missing(value):
                cleaned[key] = value
            elif key not in optional:
                cleaned[key] = None
        return cleaned

    @classmethod
    def columns(cls) -> list[str]:
        """Column names (field aliases where set) in field order."""
        return [info.alias or name for name, info in cls.model_fields.items()]


class BaseTabular(pd.DataFrame, ABC):
    """DataFrame whose rows follow a pydantic model.

    Subclasses set ``model`` and, when rows have a natural key, ``index_cols``.
    Slicing and sorting return the subclass
    (https://pandas.pydata.org/docs/development/extending.html).
    """

    index_cols: Optional[list[str]] = None
    _metadata = []

    @property
    @abstractmethod
    def model(self) -> type[BaseTabularModel]:
        """Row model."""
        raise NotImplementedError("model must be assigned in subclass")

    def __init__(self, *args, **kwargs) -> None:
        super().__init__(*args, **kwargs)
        if self.empty:
            for col in self.model.columns():
                self[col] = None

    @property
    def _constructor(self) -> type[pd.DataFrame]:
        return self.__class__

    @classmethod
    def from_records(cls, records: list[dict], validate=True) -> Self:
        """Build the table from row dictionaries."""
        table = cls(records, columns=cls.model.columns())
        return table.validate() if validate else table

    @classmethod
    def load(cls, fpath: StrOrPathLike, validate=True, **kwargs) -> Self:
        """Read a CSV file written by ``save``.

        Cells are read as strings and converted by the row model.
        """
        if "dtype" in kwargs:
            raise ValueError(
                "load() does not accept 'dtype': cells are read as strings and"
                " converted by the row model"
            )
        table = cls(pd.read_csv(fpath, dtype=str, **kwargs))
        return table.validate() if validate else table

    def validate(self) -> Self:
        """Validate every row against the model and check key uniqueness."""
        name = self.__class__.__name__.lower()
        adapter = TypeAdapter(list[self.model])
        try:
            rows = adapter.validate_python(self.to_dict(orient="records"))
        except ValidationError as exception:
            raise ValueError(
                f"Error when validating the {name}: {exception.error_count()} invalid"
                f" value(s): {exception.errors(include_url=False)}"
            ) from exception

        validated = self.__class__(
            [row.model_dump(by_alias=True) for row in rows],
            columns=self.model.columns(),
        )
        duplicates = validated.find_duplicates() if self.index_cols else []
        if len(duplicates) > 0:
            raise ValueError(
                f"Duplicate records found in {name}: columns {self.index_cols}"
                f" must identify a row, got\n{duplicates}"
            )
        return validated

    def find_duplicates(self, cols=None) -> Self:
        """Rows sharing their values in ``cols`` (``index_cols`` by default)."""
        return self[self.duplicated(subset=cols or self.index_cols, keep=False)]

    def sort_values(self, **kwargs):
        """Sort by ``index_cols`` unless told otherwise, resetting the index."""
        kwargs.setdefault("by", self.index_cols)
        kwargs.setdefault("ignore_index", True)
        return super().sort_values(**kwargs)

    def save(self, fpath: StrOrPathLike, sort=True) -> None:
        """Write the table as CSV with shortest round-trip floats."""
        save_csv(self.sort_values() if sort and self.index_cols else self, fpath)

    def equals(self, other: object) -> bool:
        """Equal content, ignoring column order."""
        try:
            pd.testing.assert_frame_equal(self, other, check_like=True)
        except AssertionError:
            return False
        return True
