"""Points of the sample set A, identified by dense integer ids."""

from dataclasses import dataclass, field
from typing import List, Sequence, Union

import numpy as np

from reebsweep.common.errors import InputError


@dataclass(frozen=True)
class Point:
    """A point of A.

    Attributes:
        id: dense index into A, in 0..n-1.
        coords: array of shape (d,) of finite coordinates.
    """

    id: int
    coords: np.ndarray = field(compare=False)

    def __post_init__(self) -> None:
        coords = np.asarray(self.coords, dtype=float)
        if coords.ndim != 1 or coords.shape[0] < 1:
            raise InputError(f"Point {self.id} must have coordinates of shape (d,) with d >= 1.")
        if not np.all(np.isfinite(coords)):
            raise InputError(f"Point {self.id} has non-finite coordinates {coords.tolist()}.")
        object.__setattr__(self, "coords", coords)

    @property
    def dim(self) -> int:
        return self.coords.shape[0]


PointsLike = Union[Sequence[Point], np.ndarray]


def points_from_array(points: np.ndarray) -> List[Point]:
    """Wrap the rows of an (N,d) array as points with ids 0..N-1."""
    points = np.asarray(points, dtype=float)
    if points.size == 0:
        return []
    if points.ndim != 2:
        raise InputError("Input point cloud must have shape (N,d).")
    return [Point(id=i, coords=row) for i, row in enumerate(points)]


def as_point_list(points: PointsLike) -> List[Point]:
    """Accept either a list of points or an (N,d) array, and validate ids and dimensions."""
    if isinstance(points, np.ndarray):
        return points_from_array(points)

    point_list = list(points)
    ids = [p.id for p in point_list]
    if sorted(ids) != list(range(len(point_list))):
        raise InputError(f"Point ids must be exactly 0..{len(point_list) - 1}, got {sorted(ids)}.")
    dims = {p.dim for p in point_list}
    if len(dims) > 1:
        raise InputError(f"Points have mixed dimensions {sorted(dims)}.")
    return sorted(point_list, key=lambda p: p.id)


def as_array(points: Sequence[Point]) -> np.ndarray:
    """Stack point coordinates into an (N,d) array, ordered by id."""
    if len(points) == 0:
        return np.zeros((0, 0))
    return np.stack([p.coords for p in sorted(points, key=lambda p: p.id)])


def find_duplicate_groups(points: Sequence[Point]) -> List[List[int]]:
    """Groups of ids (each of size >= 2) whose coordinates are identical."""
    groups = {}
    for p in points:
        groups.setdefault(tuple(p.coords.tolist()), []).append(p.id)
    return [sorted(ids) for ids in groups.values() if len(ids) > 1]
