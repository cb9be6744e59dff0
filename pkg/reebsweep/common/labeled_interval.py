"""Closed intervals labeled by a point (I_p) or by an unordered pair of points (I_{p,q}).

These are the events of the sweep: I_p = f(B_eps(p)) and I_{p,q} = f(B_eps(p) \\cap B_eps(q)).
"""

from dataclasses import dataclass
from typing import NamedTuple, Tuple, Union

from reebsweep.common.errors import ContractViolationError


class BallLabel(NamedTuple):
    """Label of the interval of a single ball."""

    p: int

    @property
    def point_ids(self) -> Tuple[int, ...]:
        return (self.p,)

    def __str__(self) -> str:
        return f"I_{self.p}"


class PairLabel(NamedTuple):
    """Label of the interval of the intersection of two balls. Stored with p < q."""

    p: int
    q: int

    @classmethod
    def unordered(cls, p: int, q: int) -> "PairLabel":
        """Create the label of the unordered pair {p,q}."""
        if p == q:
            raise ContractViolationError(f"Pair label requires two distinct points, got {p} twice.")
        return cls(min(p, q), max(p, q))

    @property
    def point_ids(self) -> Tuple[int, ...]:
        return (self.p, self.q)

    def __str__(self) -> str:
        return f"I_{{{self.p},{self.q}}}"


IntervalLabel = Union[BallLabel, PairLabel]


@dataclass(frozen=True)
class LabeledInterval:
    """Closed interval [lo, hi] with its label.

    Attributes:
        lo: left endpoint.
        hi: right endpoint, lo <= hi (single-point intervals allowed).
        label: BallLabel or PairLabel.
    """

    lo: float
    hi: float
    label: IntervalLabel

    def __post_init__(self) -> None:
        if not self.lo <= self.hi:
            raise ContractViolationError(f"Interval {self.label} has lo={self.lo} > hi={self.hi}.")
        if isinstance(self.label, PairLabel) and self.label.p == self.label.q:
            raise ContractViolationError(f"Pair interval {self.label} must join two distinct points.")

    @property
    def is_ball(self) -> bool:
        return isinstance(self.label, BallLabel)

    @property
    def is_pair(self) -> bool:
        return isinstance(self.label, PairLabel)

    def contains(self, x: float) -> bool:
        """Whether the level x lies in the closed interval."""
        return self.lo <= x <= self.hi

    def is_subinterval_of(self, other: "LabeledInterval") -> bool:
        return other.lo <= self.lo and self.hi <= other.hi

    def sort_key(self) -> Tuple[float, int, Tuple[int, ...]]:
        """Left endpoint first, then ball intervals before pair intervals, then label ids."""
        return (self.lo, 0 if self.is_ball else 1, self.label.point_ids)

    def __repr__(self) -> str:
        return f"{self.label}=[{self.lo:.4g}, {self.hi:.4g}]"
