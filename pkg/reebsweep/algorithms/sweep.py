"""Sweep over the sorted ball and pair intervals, maintaining the minimal partition of the reals.

Every cell of the partition-of-reals stores, in a union-find forest, the partition of the points whose ball interval
covers the cell, as glued by the pair intervals covering it. Link graphs between consecutive cells record which
classes intersect. Ball events add singletons (after splitting the cells at the interval's endpoints), pair events
merge the classes of p and q in every covered cell, fusing a cell into its predecessor when the merge makes their
partitions equal.
"""

import logging
from dataclasses import asdict, dataclass
from typing import Any, Callable, Dict, Iterator, List, Optional, Sequence

from reebsweep.common.cell import Cell, CellBound, LinkGraph, bounds_to_str
from reebsweep.common.errors import ContractViolationError, InputError, InvariantViolationError
from reebsweep.common.labeled_interval import LabeledInterval
from reebsweep.common.union_find_forest import Partition, UnionFindForest, sorted_classes

logger = logging.getLogger(__name__)

SnapshotCallback = Callable[["SweepState", List[LabeledInterval]], None]


@dataclass
class OpCounters:
    """Operation tallies of one sweep.

    The three union-find operations are counted inside the forests. `neighbor_merge_length` sums the lengths of the
    neighbor lists merged after unions. The `max_*` fields record the largest per-event values of the quantities
    bounded by the cell, link-edge and traversed-neighbor claims (the last two only when claims are checked).
    """

    make_set: int = 0
    union: int = 0
    find_set: int = 0
    splits: int = 0
    deletes: int = 0
    finger_advances: int = 0
    neighbor_merge_length: int = 0
    events: int = 0
    max_cells_per_event: int = 0
    max_link_edges: int = 0
    max_claim3_length: int = 0

    @property
    def uf_operations(self) -> int:
        """Total number of make-set, union and find-set calls."""
        return self.make_set + self.union + self.find_set

    def as_dict(self) -> Dict[str, int]:
        counters = asdict(self)
        counters["uf_operations"] = self.uf_operations
        return counters


def sort_events(ball_intervals: Sequence[LabeledInterval], pair_intervals: Sequence[LabeledInterval]) -> List[LabeledInterval]:
    """Sort all intervals by left endpoint, ball intervals before pair intervals on ties, then by label ids."""
    return sorted(list(ball_intervals) + list(pair_intervals), key=lambda interval: interval.sort_key())


class SweepState:
    """Doubly linked partition-of-reals, a finger into it, and operation counters."""

    def __init__(self, num_points: int, check_claims: bool = False) -> None:
        """Start from the single cell R with an empty forest.

        Args:
            num_points: n = |A|, used by the claim checks.
            check_claims: whether to assert the per-event bounds on touched cells, link edges and traversed
                neighbor lists, and the minimality of the partition-of-reals around every touched cell.
        """
        self.num_points = num_points
        self.check_claims = check_claims
        self.counters = OpCounters()
        self.head = Cell(lo=CellBound.neg_inf(), hi=CellBound.pos_inf(), uf=UnionFindForest(counters=self.counters))
        self.finger = self.head
        self._touched: List[Cell] = []

    def cells(self) -> Iterator[Cell]:
        """Iterate over the partition-of-reals from left to right."""
        cell: Optional[Cell] = self.head
        while cell is not None:
            yield cell
            cell = cell.succ

    @property
    def num_cells(self) -> int:
        return sum(1 for _ in self.cells())

    def partitions(self) -> List[Partition]:
        """Stored partition of every cell, left to right."""
        return [cell.uf.partition() for cell in self.cells()]

    def locate(self, interval: LabeledInterval) -> Cell:
        """Advance the finger to the cell containing the interval's left endpoint."""
        while not self.finger.contains(interval.lo):
            if self.finger.succ is None:
                raise InvariantViolationError(f"No cell contains {interval.lo}; the partition-of-reals must cover R.")
            self.finger = self.finger.succ
            self.counters.finger_advances += 1
        return self.finger

    def split_cell(self, J: Cell, interval: LabeledInterval) -> Cell:
        """Replace J by two or three cells so that J \\cap I becomes a cell of its own.

        All trees of J are flattened first, then every piece gets its own copy of the forest, with identity link
        graphs between consecutive pieces.

        Returns:
            The piece equal to J \\cap I.
        """
        a, b = interval.lo, interval.hi
        if not J.intersects(a, b) or J.is_subset_of(a, b):
            raise ContractViolationError(f"split of {J} by {interval} requires a partial overlap.")

        J.uf.flatten()
        self.counters.splits += 1

        bounds = []
        if J.lo.value < a:
            bounds.append((J.lo, CellBound(a, False)))
        middle_index = len(bounds)
        middle_lo = CellBound(a, True) if J.lo.value < a else J.lo
        middle_hi = CellBound(b, True) if J.hi.value > b else J.hi
        bounds.append((middle_lo, middle_hi))
        if J.hi.value > b:
            bounds.append((CellBound(b, False), J.hi))

        roots = J.uf.roots()
        pieces = []
        for i, (lo, hi) in enumerate(bounds):
            if i == 0:
                piece = Cell(lo=lo, hi=hi, uf=J.uf, pred=J.pred, link_pred=J.link_pred)
            else:
                piece = Cell(lo=lo, hi=hi, uf=J.uf.copy(), pred=pieces[-1], link_pred=LinkGraph.identity(roots))
                pieces[-1].succ = piece
            pieces.append(piece)

        pieces[-1].succ = J.succ
        if J.pred is not None:
            J.pred.succ = pieces[0]
        else:
            self.head = pieces[0]
        if J.succ is not None:
            J.succ.pred = pieces[-1]

        J.alive = False
        if self.finger is J:
            self.finger = pieces[0]
        self._touched.extend(pieces)
        return pieces[middle_index]

    def delete_cell(self, J: Cell) -> None:
        """Unlink J, whose partition equals its predecessor's, composing the link graphs through it."""
        pred, succ = J.pred, J.succ
        if pred is None or succ is None:
            raise InvariantViolationError(f"delete of {J} requires both neighbors.")
        if not J.link_pred.is_bijection():
            raise InvariantViolationError(f"delete of {J} requires a bijective link graph to its predecessor.")

        succ.link_pred = J.link_pred.compose(succ.link_pred)
        pred.succ = succ
        succ.pred = pred
        J.alive = False
        self.counters.deletes += 1
        if self.finger is J:
            self.finger = pred
        self._touched.append(succ)

    def union_step(self, J: Cell, interval: LabeledInterval, first: bool) -> Cell:
        """Merge the classes of p and q in J, splitting J first if it is not inside the interval.

        Returns:
            The cell now holding J \\cap I: J itself (or its middle piece), or its predecessor if the two fused.
        """
        if not J.is_subset_of(interval.lo, interval.hi):
            J = self.split_cell(J, interval)

        p, q = interval.label
        survivor, dead = J.uf.union(p, q)
        traversed = 0
        if J.pred is not None:
            traversed += J.link_pred.merge_right_root(survivor, dead)
        if J.succ is not None:
            traversed += J.succ.link_pred.merge_left_root(survivor, dead)
        self.counters.neighbor_merge_length += traversed
        self._touched.append(J)

        # Point sets of consecutive cells are nested, so equal sizes mean equal point sets, and a bijective link
        # graph between them then means equal partitions.
        if first and J.pred is not None and len(J.uf) == len(J.pred.uf) and J.link_pred.is_bijection():
            pred = J.pred
            logger.debug("Fusing %s into its predecessor %s.", J, pred)
            pred.hi = J.hi
            self.delete_cell(J)
            return pred
        return J

    def process_ball(self, interval: LabeledInterval) -> None:
        """Add p as a singleton to every cell covered by I_p."""
        p = interval.label.p
        J: Optional[Cell] = self.locate(interval)
        num_touched = 0
        while J is not None and J.intersects(interval.lo, interval.hi):
            num_touched += 1
            if not J.is_subset_of(interval.lo, interval.hi):
                J = self.split_cell(J, interval)
            J.uf.make_set(p)
            if J.pred is not None and p in J.pred.uf:
                J.link_pred.add_edge(J.pred.uf.find_set(p), J.uf.find_set(p))
            self._touched.append(J)
            J = J.succ
        self._record_cells_per_event(num_touched, interval)

    def process_pair(self, interval: LabeledInterval) -> None:
        """Merge the classes of p and q in every cell covered by I_{p,q}."""
        p, q = interval.label
        start = self.locate(interval)
        if self.check_claims:
            self._check_traversed_neighbors(start, interval)

        J: Optional[Cell] = start
        first = True
        num_touched = 0
        while J is not None and J.intersects(interval.lo, interval.hi):
            num_touched += 1
            if p not in J.uf or q not in J.uf:
                raise ContractViolationError(
                    f"{interval} is not contained in both ball intervals: {J} lacks point {p if p not in J.uf else q}."
                )
            if J.uf.find_set(p) != J.uf.find_set(q):
                J = self.union_step(J, interval, first)
                first = False
            J = J.succ
        self._record_cells_per_event(num_touched, interval)

    def process(self, interval: LabeledInterval) -> None:
        """Handle one event and, if enabled, assert the per-event claims."""
        self._touched = []
        self.counters.events += 1
        if interval.is_ball:
            self.process_ball(interval)
        else:
            self.process_pair(interval)
        if self.check_claims:
            self._check_touched()

    def _record_cells_per_event(self, num_cells: int, interval: LabeledInterval) -> None:
        self.counters.max_cells_per_event = max(self.counters.max_cells_per_event, num_cells)
        if self.check_claims and self.num_points >= 1 and num_cells > 2 * self.num_points:
            raise InvariantViolationError(f"{interval} intersected {num_cells} cells, more than 2n = {2 * self.num_points}.")

    def _check_traversed_neighbors(self, start: Cell, interval: LabeledInterval) -> None:
        """Sum, over the cells covered by I_{p,q}, the number of neighbors of [p] in the link graph to the successor."""
        p = interval.label.p
        total = 0
        J: Optional[Cell] = start
        while J is not None and J.intersects(interval.lo, interval.hi):
            if J.succ is not None and p in J.uf:
                total += len(J.succ.link_pred.neighbors_left(_root_without_compression(J.uf, p)))
            J = J.succ
        self.counters.max_claim3_length = max(self.counters.max_claim3_length, total)
        if total > 3 * self.num_points - 1:
            raise InvariantViolationError(f"{interval} traverses {total} neighbors, more than 3n - 1 = {3 * self.num_points - 1}.")

    def _check_touched(self) -> None:
        """Assert the link edge bound and minimality around every cell touched by the last event."""
        for cell in self._touched:
            if not cell.alive:
                continue
            for graph in (cell.link_pred, cell.succ.link_pred if cell.succ is not None else None):
                if graph is None:
                    continue
                num_edges = graph.num_edges()
                self.counters.max_link_edges = max(self.counters.max_link_edges, num_edges)
                if num_edges > self.num_points:
                    raise InvariantViolationError(f"Link graph at {cell} has {num_edges} edges, more than n = {self.num_points}.")
            partition = cell.uf.partition()
            for neighbor in (cell.pred, cell.succ):
                if neighbor is not None and neighbor.uf.partition() == partition:
                    raise InvariantViolationError(f"Consecutive cells {neighbor} and {cell} store the same partition.")

    def to_debug_dict(self) -> Dict[str, Any]:
        """Cells with bounds, partitions as sorted set families, link edges as root pairs, and the counters."""
        cells = []
        for cell in self.cells():
            entry: Dict[str, Any] = {}
            entry.update(cell.lo.to_dict("lo"))
            entry.update(cell.hi.to_dict("hi"))
            entry["partition"] = sorted_classes(cell.uf.partition())
            entry["link_pred"] = [list(edge) for edge in cell.link_pred.edges()]
            cells.append(entry)
        return {"cells": cells, "counters": self.counters.as_dict()}

    def __repr__(self) -> str:
        return " | ".join(f"{bounds_to_str(c.lo, c.hi)} {sorted_classes(c.uf.partition())}" for c in self.cells())


def _root_without_compression(uf: UnionFindForest, p: int) -> int:
    root = p
    while uf.parent[root] != root:
        root = uf.parent[root]
    return root


def sweep(
    ball_intervals: Sequence[LabeledInterval],
    pair_intervals: Sequence[LabeledInterval],
    check_claims: bool = False,
    snapshot_callback: Optional[SnapshotCallback] = None,
) -> SweepState:
    """Compute the minimal partition of the reals with its forests and link graphs.

    Args:
        ball_intervals: one interval I_p per point.
        pair_intervals: intervals I_{p,q}, each contained in I_p and I_q.
        check_claims: assert the per-event bounds and minimality (see `SweepState`).
        snapshot_callback: called after every event with the state and the events processed so far.

    Returns:
        The final state.

    Raises:
        InputError: if pair intervals are given without any ball interval.
    """
    if len(ball_intervals) == 0 and len(pair_intervals) > 0:
        raise InputError("Pair intervals require ball intervals; every I_{p,q} must lie inside I_p and I_q.")

    state = SweepState(num_points=len(ball_intervals), check_claims=check_claims)
    events = sort_events(ball_intervals, pair_intervals)
    processed: List[LabeledInterval] = []
    for interval in events:
        logger.debug("Processing %r", interval)
        state.process(interval)
        if snapshot_callback is not None:
            processed.append(interval)
            snapshot_callback(state, list(processed))

    logger.info(
        "Swept %d events (n=%d, t=%d) into %d cells.",
        len(events),
        len(ball_intervals),
        len(pair_intervals),
        state.num_cells,
    )
    return state
