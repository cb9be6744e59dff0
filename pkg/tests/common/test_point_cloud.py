"""Unit tests on points of the sample set."""

import numpy as np
import pytest

from reebsweep.common.errors import InputError
from reebsweep.common.point_cloud import Point, as_array, as_point_list, find_duplicate_groups, points_from_array


def test_points_from_array() -> None:
    """Rows become points with ids 0..N-1."""
    points = points_from_array(np.array([[0.1, 1.0], [1.4, -0.4]]))
    assert [p.id for p in points] == [0, 1]
    assert np.allclose(points[1].coords, [1.4, -0.4])
    assert points[0].dim == 2


def test_empty_array() -> None:
    """An empty array gives no points."""
    assert points_from_array(np.zeros((0, 0))) == []
    assert as_array([]).shape == (0, 0)


def test_non_finite_coordinates() -> None:
    """NaN or infinite coordinates are rejected."""
    with pytest.raises(InputError):
        Point(0, np.array([np.nan, 1.0]))
    with pytest.raises(InputError):
        Point(0, np.array([np.inf]))
    with pytest.raises(InputError):
        Point(0, np.zeros(0))


def test_as_point_list_validates_ids() -> None:
    """Ids must be dense, and dimensions must agree."""
    with pytest.raises(InputError):
        as_point_list([Point(0, np.zeros(2)), Point(2, np.ones(2))])
    with pytest.raises(InputError):
        as_point_list([Point(0, np.zeros(2)), Point(1, np.ones(3))])

    points = as_point_list([Point(1, np.ones(2)), Point(0, np.zeros(2))])
    assert [p.id for p in points] == [0, 1]
    assert np.allclose(as_array(points), [[0, 0], [1, 1]])


def test_find_duplicate_groups() -> None:
    """Coincident points are reported by id."""
    points = points_from_array(np.array([[0, 0], [1, 1], [0, 0], [2, 2], [1, 1], [0, 0]]))
    assert sorted(find_duplicate_groups(points)) == [[0, 2, 5], [1, 4]]
    assert find_duplicate_groups(points[:2]) == []
