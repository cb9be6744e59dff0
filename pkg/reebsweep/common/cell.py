"""Cells of the partition-of-reals and the link graphs glueing consecutive cells."""

import bisect
import heapq
import math
from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Optional, Tuple

from reebsweep.common.errors import ContractViolationError, InvariantViolationError
from reebsweep.common.union_find_forest import UnionFindForest


@dataclass(frozen=True)
class CellBound:
    """One endpoint of a cell. Infinite values are always exclusive."""

    value: float
    inclusive: bool

    def __post_init__(self) -> None:
        if math.isnan(self.value):
            raise ContractViolationError("Cell bound cannot be NaN.")
        if math.isinf(self.value) and self.inclusive:
            raise ContractViolationError(f"Infinite cell bound {self.value} must be exclusive.")

    @classmethod
    def neg_inf(cls) -> "CellBound":
        return cls(-math.inf, False)

    @classmethod
    def pos_inf(cls) -> "CellBound":
        return cls(math.inf, False)

    @property
    def is_finite(self) -> bool:
        return math.isfinite(self.value)

    def to_dict(self, prefix: str) -> Dict[str, object]:
        """Serialize as {prefix: value or None, prefix_closed: inclusive}."""
        return {prefix: self.value if self.is_finite else None, f"{prefix}_closed": self.inclusive}

    @classmethod
    def from_dict(cls, data: Dict[str, object], prefix: str, is_lower: bool) -> "CellBound":
        value = data[prefix]
        if value is None:
            return cls.neg_inf() if is_lower else cls.pos_inf()
        return cls(float(value), bool(data[f"{prefix}_closed"]))


def bounds_contain(lo: CellBound, hi: CellBound, x: float) -> bool:
    """Whether x lies in the interval delimited by lo and hi."""
    above_lo = lo.value < x or (lo.value == x and lo.inclusive)
    below_hi = x < hi.value or (x == hi.value and hi.inclusive)
    return above_lo and below_hi


def bounds_to_str(lo: CellBound, hi: CellBound) -> str:
    """Interval notation such as [0, 0.6) or (-inf, -1.4)."""
    left = "[" if lo.inclusive else "("
    right = "]" if hi.inclusive else ")"
    return f"{left}{lo.value:g}, {hi.value:g}{right}"


def sample_levels(lo: CellBound, hi: CellBound) -> List[float]:
    """Levels witnessing a cell: its closed finite endpoints and one interior point."""
    levels = []
    if lo.inclusive:
        levels.append(lo.value)
    if lo.is_finite and hi.is_finite:
        levels.append((lo.value + hi.value) / 2.0)
    elif lo.is_finite:
        levels.append(lo.value + 1.0)
    elif hi.is_finite:
        levels.append(hi.value - 1.0)
    else:
        levels.append(0.0)
    if hi.inclusive and hi.value != lo.value:
        levels.append(hi.value)
    return levels


def _merge_sorted_unique(a: List[int], b: List[int]) -> List[int]:
    merged: List[int] = []
    for x in heapq.merge(a, b):
        if not merged or merged[-1] != x:
            merged.append(x)
    return merged


def _insert_sorted_unique(values: List[int], x: int) -> None:
    idx = bisect.bisect_left(values, x)
    if idx == len(values) or values[idx] != x:
        values.insert(idx, x)


def _remove_sorted(values: List[int], x: int) -> None:
    idx = bisect.bisect_left(values, x)
    if idx == len(values) or values[idx] != x:
        raise InvariantViolationError(f"Link graph is not bidirectional: {x} missing from a neighbor list.")
    del values[idx]


@dataclass
class LinkGraph:
    """Bipartite graph G(J, J') between the roots of two consecutive cells J < J'.

    Attributes:
        left: for each root of J, its sorted neighbor roots in J'.
        right: for each root of J', its sorted neighbor roots in J.
    """

    left: Dict[int, List[int]] = field(default_factory=dict)
    right: Dict[int, List[int]] = field(default_factory=dict)

    @classmethod
    def identity(cls, roots: Iterable[int]) -> "LinkGraph":
        """The identity on the given roots, used between the pieces of a split cell."""
        graph = cls()
        for r in roots:
            graph.left[r] = [r]
            graph.right[r] = [r]
        return graph

    def add_edge(self, s: int, t: int) -> None:
        """Add the edge s <-> t between root s of the left cell and root t of the right cell."""
        _insert_sorted_unique(self.left.setdefault(s, []), t)
        _insert_sorted_unique(self.right.setdefault(t, []), s)

    def merge_left_root(self, survivor: int, dead: int) -> int:
        """Transfer the neighbors of `dead` to `survivor` after a union in the left cell.

        Returns:
            Summed length of the two neighbor lists that were merged.
        """
        return _merge_root(self.left, self.right, survivor, dead)

    def merge_right_root(self, survivor: int, dead: int) -> int:
        """Transfer the neighbors of `dead` to `survivor` after a union in the right cell."""
        return _merge_root(self.right, self.left, survivor, dead)

    def is_bijection(self) -> bool:
        """Whether every root on both sides has exactly one neighbor."""
        return (
            len(self.left) == len(self.right)
            and all(len(nbrs) == 1 for nbrs in self.left.values())
            and all(len(nbrs) == 1 for nbrs in self.right.values())
        )

    def compose(self, other: "LinkGraph") -> "LinkGraph":
        """Compute G(J.pred, J.succ) = self o other, where self = G(J.pred, J) is a bijection and other = G(J, J.succ)."""
        if not self.is_bijection():
            raise InvariantViolationError("Composition through a cell requires a bijective link graph on its left.")

        composed = LinkGraph()
        for s, (t,) in self.left.items():
            nbrs = other.left.get(t)
            if nbrs:
                composed.left[s] = list(nbrs)
        for u, nbrs in other.right.items():
            composed.right[u] = sorted(self.right[t][0] for t in nbrs)
        return composed

    def neighbors_left(self, s: int) -> List[int]:
        return self.left.get(s, [])

    def num_edges(self) -> int:
        return sum(len(nbrs) for nbrs in self.left.values())

    def edges(self) -> List[Tuple[int, int]]:
        """All edges (s, t), sorted."""
        return sorted((s, t) for s, nbrs in self.left.items() for t in nbrs)

    def is_consistent(self) -> bool:
        """Whether both directions agree, and every neighbor list is sorted without duplicates."""
        for side in (self.left, self.right):
            for nbrs in side.values():
                if any(a >= b for a, b in zip(nbrs, nbrs[1:])):
                    return False
        mirrored = sorted((s, t) for t, nbrs in self.right.items() for s in nbrs)
        return mirrored == self.edges()


def _merge_root(own: Dict[int, List[int]], opposite: Dict[int, List[int]], survivor: int, dead: int) -> int:
    dead_nbrs = own.pop(dead, [])
    survivor_nbrs = own.get(survivor, [])
    traversed = len(dead_nbrs) + len(survivor_nbrs)
    if len(dead_nbrs) == 0:
        return traversed

    own[survivor] = _merge_sorted_unique(survivor_nbrs, dead_nbrs)
    for t in dead_nbrs:
        back = opposite[t]
        _remove_sorted(back, dead)
        _insert_sorted_unique(back, survivor)
    return traversed


@dataclass(eq=False)
class Cell:
    """One interval of the partition-of-reals.

    Attributes:
        lo: lower bound.
        hi: upper bound.
        uf: partition of the points whose ball interval covers the cell.
        pred: cell immediately to the left, None for the leftmost cell.
        succ: cell immediately to the right, None for the rightmost cell.
        link_pred: G(pred, self). Empty for the leftmost cell.
        alive: False once the cell was split or deleted.
    """

    lo: CellBound
    hi: CellBound
    uf: UnionFindForest
    pred: Optional["Cell"] = field(default=None, repr=False)
    succ: Optional["Cell"] = field(default=None, repr=False)
    link_pred: LinkGraph = field(default_factory=LinkGraph, repr=False)
    alive: bool = field(default=True, repr=False)

    def __post_init__(self) -> None:
        nonempty = self.lo.value < self.hi.value or (
            self.lo.value == self.hi.value and self.lo.inclusive and self.hi.inclusive
        )
        if not nonempty:
            raise InvariantViolationError(f"Empty cell {bounds_to_str(self.lo, self.hi)}.")

    def contains(self, x: float) -> bool:
        return bounds_contain(self.lo, self.hi, x)

    def intersects(self, a: float, b: float) -> bool:
        """Whether the cell meets the closed interval [a, b]."""
        starts_before_b = self.lo.value < b or (self.lo.value == b and self.lo.inclusive)
        ends_after_a = self.hi.value > a or (self.hi.value == a and self.hi.inclusive)
        return starts_before_b and ends_after_a

    def is_subset_of(self, a: float, b: float) -> bool:
        """Whether the cell lies inside the closed interval [a, b]."""
        return self.lo.value >= a and self.hi.value <= b

    def is_left_of(self, a: float) -> bool:
        """Whether every level of the cell is smaller than a."""
        return self.hi.value < a or (self.hi.value == a and not self.hi.inclusive)

    def __repr__(self) -> str:
        classes = sorted(sorted(c) for c in self.uf.classes().values())
        return f"Cell({bounds_to_str(self.lo, self.hi)}, {classes})"
