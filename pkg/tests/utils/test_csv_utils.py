"""Unit tests on reading point rows from delimited text files."""

from pathlib import Path

import pytest

import reebsweep.utils.csv_utils as csv_utils
from reebsweep.common.errors import InputError

TEST_DATA_ROOT = Path(__file__).resolve().parent.parent / "test_data"


def _write(tmp_path: Path, text: str, name: str = "points.csv") -> Path:
    fpath = tmp_path / name
    fpath.write_text(text)
    return fpath


def test_read_point_rows_with_header() -> None:
    rows = csv_utils.read_point_rows(TEST_DATA_ROOT / "four_points.csv")
    assert rows == [[0.1, 1.0], [1.4, -0.4], [1.9, 1.3], [0.5, 2.0]]


def test_read_point_rows_without_header(tmp_path: Path) -> None:
    """Header is optional, blank lines are skipped, scientific notation is accepted."""
    fpath = _write(tmp_path, "1e-1,2\n\n3, 4.5\n")
    assert csv_utils.read_point_rows(fpath) == [[0.1, 2.0], [3.0, 4.5]]


def test_read_point_rows_tab_delimited(tmp_path: Path) -> None:
    fpath = _write(tmp_path, "x\ty\tz\n0\t1\t2\n", name="points.tsv")
    assert csv_utils.read_point_rows(fpath, delimiter="\t") == [[0.0, 1.0, 2.0]]


def test_read_point_rows_empty(tmp_path: Path) -> None:
    assert csv_utils.read_point_rows(_write(tmp_path, "")) == []
    assert csv_utils.read_point_rows(_write(tmp_path, "x,y\n", name="header_only.csv")) == []


def test_non_numeric_row_is_reported(tmp_path: Path) -> None:
    """The second non-numeric row is not a header, and the error names its line."""
    fpath = _write(tmp_path, "x,y\n0,1\nfoo,2\n")
    with pytest.raises(InputError, match="row 3") as exc_info:
        csv_utils.read_point_rows(fpath)
    assert exc_info.value.row == 3


def test_ragged_row_is_reported(tmp_path: Path) -> None:
    fpath = _write(tmp_path, "0,1\n2,3,4\n")
    with pytest.raises(InputError) as exc_info:
        csv_utils.read_point_rows(fpath)
    assert exc_info.value.row == 2
    assert "expected 2 coordinates, found 3" in str(exc_info.value)


@pytest.mark.parametrize("value", ["nan", "inf", "-inf"])
def test_non_finite_row_is_reported(tmp_path: Path, value: str) -> None:
    fpath = _write(tmp_path, f"0,1\n{value},3\n")
    with pytest.raises(InputError, match="non-finite"):
        csv_utils.read_point_rows(fpath)
