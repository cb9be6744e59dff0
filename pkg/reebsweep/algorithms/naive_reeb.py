"""Brute-force reference: level partitions evaluated directly, used to validate the sweep and its output.

Nothing here shares code with the sweep's union-find forests or link graphs; partitions at a level come from
networkx's union-find over the intervals active at that level.
"""

import logging
from dataclasses import asdict, dataclass, field
from typing import Any, Dict, List, Optional, Sequence, Tuple

from networkx.utils import UnionFind

from reebsweep.algorithms.sweep import SweepState
from reebsweep.common.cell import CellBound, sample_levels
from reebsweep.common.labeled_interval import LabeledInterval
from reebsweep.common.reeb_graph import EdgeTuple, ReebCell, ReebGraph, canonical_components
from reebsweep.common.union_find_forest import Partition, partition_from_classes, sorted_classes

logger = logging.getLogger(__name__)

CLAUSE_PARTITIONS = "i"
CLAUSE_MINIMALITY = "ii"
CLAUSE_LINKS = "iii"
CLAUSE_REFINEMENT = "iv"
ALL_CLAUSES = (CLAUSE_PARTITIONS, CLAUSE_MINIMALITY, CLAUSE_LINKS, CLAUSE_REFINEMENT)


@dataclass(frozen=True)
class LevelPartition:
    """Partition of the points active at a level, glued by the pair intervals active there."""

    level: float
    classes: Partition

    def sorted_classes(self) -> List[List[int]]:
        return sorted_classes(self.classes)


def partition_at(
    x: float, ball_intervals: Sequence[LabeledInterval], pair_intervals: Sequence[LabeledInterval]
) -> LevelPartition:
    """Compute the partition of {p : x in I_p} generated by {p ~ q : x in I_{p,q}}."""
    active = [I.label.p for I in ball_intervals if I.contains(x)]
    active_set = set(active)
    uf = UnionFind(active)
    for I in pair_intervals:
        p, q = I.label
        if I.contains(x) and p in active_set and q in active_set:
            uf.union(p, q)
    return LevelPartition(level=x, classes=partition_from_classes(uf.to_sets()))


def _atoms(ball_intervals: Sequence[LabeledInterval], pair_intervals: Sequence[LabeledInterval]) -> List[Tuple[CellBound, CellBound, float]]:
    """Elementary pieces of R between and at the distinct endpoints, with one sample level each."""
    endpoints = sorted({v for I in list(ball_intervals) + list(pair_intervals) for v in (I.lo, I.hi)})
    atoms = [(CellBound.neg_inf(), CellBound(endpoints[0], False), endpoints[0] - 1.0)]
    for i, e in enumerate(endpoints):
        atoms.append((CellBound(e, True), CellBound(e, True), e))
        if i + 1 < len(endpoints):
            nxt = endpoints[i + 1]
            atoms.append((CellBound(e, False), CellBound(nxt, False), (e + nxt) / 2.0))
    atoms.append((CellBound(endpoints[-1], False), CellBound.pos_inf(), endpoints[-1] + 1.0))
    return atoms


def naive_reeb(ball_intervals: Sequence[LabeledInterval], pair_intervals: Sequence[LabeledInterval]) -> ReebGraph:
    """Build the Reeb graph by evaluating the level partition at every endpoint and inside every gap.

    Consecutive pieces with equal partitions are fused, and the components of consecutive cells are joined when
    they share a point.
    """
    if len(ball_intervals) == 0 and len(pair_intervals) == 0:
        return ReebGraph.empty()

    fused: List[Tuple[CellBound, CellBound, Partition]] = []
    for lo, hi, x in _atoms(ball_intervals, pair_intervals):
        classes = partition_at(x, ball_intervals, pair_intervals).classes
        if fused and fused[-1][2] == classes:
            fused[-1] = (fused[-1][0], hi, classes)
        else:
            fused.append((lo, hi, classes))

    cells = [ReebCell(lo=lo, hi=hi, components=canonical_components(classes)) for lo, hi, classes in fused]
    edges: List[EdgeTuple] = []
    for cell_idx in range(len(cells) - 1):
        for j, S in enumerate(cells[cell_idx].components):
            for l, T in enumerate(cells[cell_idx + 1].components):
                if not set(S).isdisjoint(T):
                    edges.append((cell_idx, j, cell_idx + 1, l))
    return ReebGraph(cells, edges)


@dataclass(frozen=True)
class ClauseFailure:
    """One violated clause, with the witnessing level and the two disagreeing values."""

    clause: str
    level: Optional[float]
    expected: Any
    found: Any
    message: str


@dataclass
class StateCheckReport:
    """Outcome of checking a sweep state against the level partitions of the processed events."""

    num_events: int
    num_cells: int
    failures: List[ClauseFailure] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return len(self.failures) == 0

    def clause_passed(self, clause: str) -> bool:
        return all(failure.clause != clause for failure in self.failures)

    def failed_clauses(self) -> List[str]:
        return sorted({failure.clause for failure in self.failures})

    def to_dict(self) -> Dict[str, Any]:
        return {
            "num_events": self.num_events,
            "num_cells": self.num_cells,
            "passed": self.passed,
            "clauses": {clause: self.clause_passed(clause) for clause in ALL_CLAUSES},
            "failures": [asdict(failure) for failure in self.failures],
        }


def check_state(state: SweepState, processed: Sequence[LabeledInterval]) -> StateCheckReport:
    """Verify a (possibly intermediate) sweep state against brute force.

    Checks (i) every cell stores the level partition at its closed endpoints and an interior level, (ii) consecutive
    cells store different partitions, (iii) every link graph joins exactly the roots of intersecting classes, and
    (iv) for consecutive cells J < J' with J not entirely left of the last processed interval, every class of J' lies
    inside the class of J containing the same points. Refinement between non-consecutive cells follows by
    transitivity.
    """
    balls = [I for I in processed if I.is_ball]
    pairs = [I for I in processed if I.is_pair]
    cells = list(state.cells())
    report = StateCheckReport(num_events=len(processed), num_cells=len(cells))

    for cell in cells:
        stored = cell.uf.partition()
        for x in sample_levels(cell.lo, cell.hi):
            expected = partition_at(x, balls, pairs)
            if expected.classes != stored:
                report.failures.append(
                    ClauseFailure(
                        clause=CLAUSE_PARTITIONS,
                        level=x,
                        expected=expected.sorted_classes(),
                        found=sorted_classes(stored),
                        message=f"{cell} disagrees with the level partition at x={x:g}.",
                    )
                )

    for J, J_next in zip(cells, cells[1:]):
        if J.uf.partition() == J_next.uf.partition():
            report.failures.append(
                ClauseFailure(
                    clause=CLAUSE_MINIMALITY,
                    level=J.hi.value,
                    expected="different partitions",
                    found=sorted_classes(J.uf.partition()),
                    message=f"{J} and {J_next} store the same partition.",
                )
            )

        left_classes = J.uf.classes()
        right_classes = J_next.uf.classes()
        expected_edges = sorted(
            (s, t)
            for s, S in left_classes.items()
            for t, T in right_classes.items()
            if not set(S).isdisjoint(T)
        )
        found_edges = J_next.link_pred.edges()
        if expected_edges != found_edges or not J_next.link_pred.is_consistent():
            report.failures.append(
                ClauseFailure(
                    clause=CLAUSE_LINKS,
                    level=J.hi.value,
                    expected=[list(e) for e in expected_edges],
                    found=[list(e) for e in found_edges],
                    message=f"Link graph between {J} and {J_next} is wrong.",
                )
            )

    if len(processed) > 0:
        last = processed[-1]
        for J, J_next in zip(cells, cells[1:]):
            if J.is_left_of(last.lo):
                continue
            left_partition = J.uf.classes()
            member_of = {p: root for root, members in left_partition.items() for p in members}
            for members in J_next.uf.classes().values():
                roots = {member_of.get(p) for p in members}
                if len(roots) != 1 or None in roots:
                    report.failures.append(
                        ClauseFailure(
                            clause=CLAUSE_REFINEMENT,
                            level=J.hi.value,
                            expected=f"{members} inside one class of the lower cell",
                            found=sorted_classes(J.uf.partition()),
                            message=f"Class {members} of {J_next} does not refine {J}.",
                        )
                    )

    if not report.passed:
        logger.debug("State check failed clauses %s", report.failed_clauses())
    return report


@dataclass(frozen=True)
class GraphMismatch:
    """First disagreement between two Reeb graphs."""

    reason: str
    level: float
    expected: List[List[int]]
    found: List[List[int]]

    def __str__(self) -> str:
        return f"{self.reason} mismatch at level x={self.level:g}: expected {self.expected}, found {self.found}"


def compare_graphs(expected: ReebGraph, found: ReebGraph) -> Optional[GraphMismatch]:
    """Return None if the graphs are equivalent, else the lowest witnessing level of a disagreement."""
    if expected.is_equivalent(found):
        return None

    levels = sorted({x for graph in (expected, found) for cell in graph.cells for x in sample_levels(cell.lo, cell.hi)})
    for x in levels:
        a = expected.cell_containing(x).components
        b = found.cell_containing(x).components
        if a != b:
            return GraphMismatch(reason="partition", level=x, expected=[list(c) for c in a], found=[list(c) for c in b])

    # Equal partitions at every witness level: the disagreement is in the cell ranges or in the edges.
    reason = "cells" if len(expected.cells) != len(found.cells) else "edges"
    for cell_a, cell_b in zip(expected.cells, found.cells):
        if (cell_a.lo, cell_a.hi) != (cell_b.lo, cell_b.hi):
            reason = "cells"
            level = cell_a.hi.value
            break
    else:
        level = next(
            (expected.cells[i].hi.value for i, j, k, l in set(expected.edge_tuples) ^ set(found.edge_tuples)),
            expected.cells[0].hi.value,
        )
    return GraphMismatch(reason=reason, level=level, expected=[], found=[])
