"""File I/O utilities."""

import json
import math
import os
from pathlib import Path
from typing import Any, Dict, List, Optional, Union

import numpy as np

import reebsweep.utils.csv_utils as csv_utils
from reebsweep.common.errors import InputError

_PathLike = Union[str, "os.PathLike[str]"]


def read_json_file(fpath: _PathLike) -> Any:
    """Load dictionary from JSON file.

    Args:
        fpath: Path to JSON file.

    Returns:
        Deserialized Python dictionary or list.
    """
    if not Path(fpath).exists():
        raise FileNotFoundError(f"No file found at {fpath}")

    with open(fpath, "r") as f:
        return json.load(f)


def save_json_file(
    json_fpath: _PathLike,
    data: Union[Dict[Any, Any], List[Any]],
) -> None:
    """Save a Python dictionary or list to a JSON file.

    Args:
        json_fpath: Path to file to create.
        data: Python dictionary or list to be serialized.
    """
    dirname = os.path.dirname(json_fpath)
    if dirname:
        os.makedirs(dirname, exist_ok=True)
    with open(json_fpath, "w") as f:
        json.dump(data, f, indent=4)


def infer_point_cloud_format(fpath: _PathLike) -> str:
    """Guess `csv` or `json` from the file suffix (anything but .json is read as CSV)."""
    return "json" if Path(fpath).suffix.lower() == ".json" else "csv"


def load_point_cloud(fpath: _PathLike, fmt: Optional[str] = None) -> np.ndarray:
    """Read a point cloud, one point per row (CSV) or an array of coordinate arrays (JSON).

    Args:
        fpath: path to the input file.
        fmt: "csv" or "json". Inferred from the suffix if not provided.

    Returns:
        Array of shape (N,d). An empty file yields an array of shape (0,0).

    Raises:
        InputError: on unparseable rows, ragged rows or non-finite coordinates. The message names the row.
    """
    fmt = fmt if fmt is not None else infer_point_cloud_format(fpath)
    if fmt == "csv":
        rows = csv_utils.read_point_rows(fpath)
    elif fmt == "json":
        rows = _read_json_point_rows(fpath)
    else:
        raise InputError(f"Unknown point cloud format `{fmt}`, expected `csv` or `json`.")

    if len(rows) == 0:
        return np.zeros((0, 0))
    return np.array(rows, dtype=float)


def _read_json_point_rows(fpath: _PathLike) -> List[List[float]]:
    """Parse a JSON array of coordinate arrays, validating every row."""
    if Path(fpath).stat().st_size == 0:
        return []
    try:
        data = read_json_file(fpath)
    except json.JSONDecodeError as e:
        raise InputError(f"invalid JSON: {e.msg}", row=e.lineno) from e

    if not isinstance(data, list):
        raise InputError("JSON point cloud must be an array of coordinate arrays.")

    rows = []
    for row_idx, entry in enumerate(data, start=1):
        if not isinstance(entry, list) or len(entry) == 0:
            raise InputError("expected a non-empty array of coordinates", row=row_idx)
        try:
            coords = [float(v) for v in entry]
        except (TypeError, ValueError) as e:
            raise InputError(f"non-numeric coordinate in {entry}", row=row_idx) from e
        if not all(math.isfinite(v) for v in coords):
            raise InputError(f"non-finite coordinate in {entry}", row=row_idx)
        if rows and len(coords) != len(rows[0]):
            raise InputError(f"expected {len(rows[0])} coordinates, found {len(coords)}", row=row_idx)
        rows.append(coords)
    return rows
