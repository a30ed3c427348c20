"""Utility functions."""

from __future__ import annotations

import datetime
import hashlib
import json
import os
from pathlib import Path
from typing import Any, TypeVar

import numpy as np
import pandas as pd

StrOrPathLike = TypeVar("StrOrPathLike", str, os.PathLike)

# paths
DPATH_DATA = Path(__file__).parent / "data"
DPATH_EXAMPLES = DPATH_DATA / "examples"
DPATH_POTENTIALS = DPATH_DATA / "potentials"
FPATH_SAMPLE_CONFIG = DPATH_EXAMPLES / "sample_config-scatter.json"

# output file names
FNAME_MANIFEST = "manifest.json"
DNAME_LOGS = "logs"

# descriptions for common fields in the Pydantic models
FIELD_DESCRIPTION_MAP = {
    "k": "Momentum (spectral parameter k with z = k^2)",
    "x": "Radial position",
    "y": "Second radial position (kernel column)",
    "t": "Time",
    "lambda": "Energy (spectral parameter lambda = k^2)",
    "l": "Angular momentum",
    "lemma_id": "Identifier of the checked inequality or limit",
    "potential_id": "Canonical potential preset string",
}


def load_json(fpath: StrOrPathLike, **kwargs) -> dict:
    """Load a JSON file.

    Parameters
    ----------
    fpath : radscat.utils.StrOrPathLike
        Path to the JSON file
    **kwargs :
        Keyword arguments to pass to json.load

    Returns
    -------
    dict
        The JSON object.
    """
    with open(fpath, "r") as file:
        try:
            return json.load(file, **kwargs)
        except json.JSONDecodeError as exception:
            raise json.JSONDecodeError(
                f"Error loading JSON file at {fpath}", exception.doc, exception.pos
            )


def _json_default(obj: Any):
    """Serialize numpy scalars/arrays and complex numbers."""
    if isinstance(obj, (np.bool_,)):
        return bool(obj)
    if isinstance(obj, np.integer):
        return int(obj)
    if isinstance(obj, np.floating):
        return float(obj)
    if isinstance(obj, (complex, np.complexfloating)):
        return {"re": float(np.real(obj)), "im": float(np.imag(obj))}
    if isinstance(obj, np.ndarray):
        return obj.tolist()
    if isinstance(obj, Path):
        return str(obj)
    raise TypeError(f"Object of type {type(obj).__name__} is not JSON serializable")


def save_json(obj: dict | list, fpath: StrOrPathLike, **kwargs):
    """Save a JSON object to a file.

    Floats are written with Python's shortest round-trip representation, so the
    same object always produces the same bytes.

    Parameters
    ----------
    obj : dict | list
        The JSON object
    fpath : radscat.utils.StrOrPathLike
        Path to the JSON file to write
    indent : int, optional
        Indentation level, by default 4
    **kwargs :
        Keyword arguments to pass to json.dump
    """
    if "indent" not in kwargs:
        kwargs["indent"] = 4
    if "default" not in kwargs:
        kwargs["default"] = _json_default
    fpath = Path(fpath)
    fpath.parent.mkdir(parents=True, exist_ok=True)
    with open(fpath, "w") as file:
        json.dump(obj, file, **kwargs)
        file.write("\n")


def format_float(value: float) -> str:
    """Shortest decimal string that round-trips to the same float."""
    return repr(float(value))


def save_csv(df: pd.DataFrame, fpath: StrOrPathLike, **kwargs):
    """Save a dataframe with shortest round-trip float formatting."""
    if "index" not in kwargs:
        kwargs["index"] = False
    fpath = Path(fpath)
    fpath.parent.mkdir(parents=True, exist_ok=True)
    df_out = df.copy()
    for column in df_out.columns:
        if pd.api.types.is_float_dtype(df_out[column]):
            df_out[column] = df_out[column].map(format_float)
    df_out.to_csv(fpath, lineterminator="\n", **kwargs)


def sha256_file(fpath: StrOrPathLike, chunk_size: int = 1 << 16) -> str:
    """Compute the sha-256 hex digest of a file."""
    digest = hashlib.sha256()
    with open(fpath, "rb") as file:
        for chunk in iter(lambda: file.read(chunk_size), b""):
            digest.update(chunk)
    return digest.hexdigest()


def build_manifest(dpath_out: StrOrPathLike) -> list[dict]:
    """List every file under an output directory with its content hash.

    Entries are sorted by relative path, only the manifest file itself is left
    out.
    """
    dpath_out = Path(dpath_out)
    entries = []
    for fpath in sorted(dpath_out.rglob("*")):
        if not fpath.is_file():
            continue
        relpath = fpath.relative_to(dpath_out)
        if relpath.as_posix() == FNAME_MANIFEST:
            continue
        entries.append(
            {
                "path": relpath.as_posix(),
                "sha256": sha256_file(fpath),
                "bytes": fpath.stat().st_size,
            }
        )
    return entries


def add_path_suffix(path: StrOrPathLike, suffix: str, sep="-") -> Path:
    """Add a suffix to a path, before the last file extension (if any)."""
    path = Path(path)
    return Path(path.parent, f"{path.stem}{sep}{suffix}{path.suffix}")


def add_path_timestamp(
    path: StrOrPathLike, timestamp_format="%Y%m%d_%H%M", sep="-"
) -> Path:
    """Add a timestamp to a path, before the last file extension (if any)."""
    timestamp = datetime.datetime.now().strftime(timestamp_format)
    return add_path_suffix(path=path, suffix=timestamp, sep=sep)


def make_grid(start: float, stop: float, num: int, spacing: str = "linear"):
    """Build a strictly increasing 1D grid."""
    if spacing == "log":
        return np.geomspace(start, stop, num)
    if spacing == "linear":
        return np.linspace(start, stop, num)
    raise ValueError(f"Unknown grid spacing: {spacing}")


def as_complex(value) -> complex:
    """Convert a scalar to a Python complex."""
    return complex(np.asarray(value).item())
