"""Utilities for reading point clouds from CSV or TSV files."""

import csv
import math
import os
from typing import List, Optional, Union

from reebsweep.common.errors import InputError

_PathLike = Union[str, "os.PathLike[str]"]


def _parse_row(row: List[str]) -> Optional[List[float]]:
    """Parse all fields as floats (scientific notation accepted), or return None if any field is not numeric."""
    try:
        return [float(field) for field in row]
    except ValueError:
        return None


def read_point_rows(fpath: _PathLike, delimiter: str = ",") -> List[List[float]]:
    """Read one point per row. A header row is optional, and the dimension is inferred from the first data row.

    Blank lines are skipped. Row numbers in error messages are 1-based line numbers of the file.

    Raises:
        InputError: on non-numeric, non-finite or ragged rows.
    """
    rows: List[List[float]] = []
    header_seen = False

    with open(fpath, newline="") as csvfile:
        reader = csv.reader(csvfile, delimiter=delimiter)

        for row in reader:
            line_num = reader.line_num
            fields = [field.strip() for field in row]
            if len(fields) == 0 or all(field == "" for field in fields):
                continue

            coords = _parse_row(fields)
            if coords is None:
                if len(rows) == 0 and not header_seen:
                    header_seen = True
                    continue
                raise InputError(f"could not parse {row} as coordinates", row=line_num)

            if not all(math.isfinite(v) for v in coords):
                raise InputError(f"non-finite coordinate in {row}", row=line_num)

            if rows and len(coords) != len(rows[0]):
                raise InputError(f"expected {len(rows[0])} coordinates, found {len(coords)}", row=line_num)
            rows.append(coords)

    return rows
