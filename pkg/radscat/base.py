"""Readable string representations shared by the public classes."""

import inspect
from abc import ABC
from typing import Any, Optional, Sequence

import numpy as np

# arrays longer than this are shown by shape and dtype only
MAX_ARRAY_ITEMS_IN_STR = 6

_INIT_KINDS = (inspect.Parameter.POSITIONAL_OR_KEYWORD, inspect.Parameter.KEYWORD_ONLY)


def _brief(value: Any) -> str:
    if isinstance(value, np.ndarray) and value.size > MAX_ARRAY_ITEMS_IN_STR:
        return f"array(shape={value.shape}, dtype={value.dtype})"
    return str(value)


class Base(ABC):
    """Gives subclasses a ``ClassName(name=value, ...)`` representation.

    The names are the ``__init__`` parameters, which subclasses keep as
    attributes of the same name (or they override ``__str__``).
    """

    @classmethod
    def _init_names(cls) -> list[str]:
        parameters = inspect.signature(cls).parameters.values()
        return [p.name for p in parameters if p.kind in _INIT_KINDS]

    def _str_helper(
        self,
        components: Optional[Sequence] = None,
        names: Optional[Sequence[str]] = None,
        sep=", ",
    ) -> str:
        """``ClassName(c1<sep>c2<sep>name=value...)`` from free-form components
        followed by attribute values."""
        parts = [str(component) for component in components or ()]
        parts.extend(f"{name}={_brief(getattr(self, name))}" for name in names or ())
        return f"{type(self).__name__}({sep.join(parts)})"

    def __str__(self) -> str:
        names = self._init_names()
        missing = [name for name in names if not hasattr(self, name)]
        if missing:
            raise RuntimeError(
                f"Failed to build string representation of {type(self).__name__}"
                f": __init__ arguments {missing} are not stored as attributes"
                ", override __str__"
            )
        return self._str_helper(names=names)

    def __repr__(self) -> str:
        return str(self)
