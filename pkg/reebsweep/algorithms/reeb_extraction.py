"""Read the Reeb graph off a completed sweep, and cross-check its component count against the ball intersection graph."""

import logging
from typing import Dict, List

from reebsweep.algorithms.ball_intervals import ball_intersection_graph_components
from reebsweep.algorithms.sweep import SweepState
from reebsweep.common.errors import InvariantViolationError
from reebsweep.common.point_cloud import PointsLike
from reebsweep.common.reeb_graph import EdgeTuple, ReebCell, ReebGraph, canonical_components

logger = logging.getLogger(__name__)


def extract(state: SweepState) -> ReebGraph:
    """One vertex per (cell, root), one edge per link graph edge.

    Args:
        state: a completed sweep.

    Returns:
        Reeb graph whose cells are the cells of the partition-of-reals, in order.
    """
    cells: List[ReebCell] = []
    edges: List[EdgeTuple] = []
    prev_index: Dict[int, int] = {}

    for cell_idx, cell in enumerate(state.cells()):
        classes = cell.uf.classes()
        components = canonical_components(classes.values())
        # Map each root to the position of its class in the canonical ordering.
        position = {members[0]: idx for idx, members in enumerate(components)}
        root_index = {root: position[members[0]] for root, members in classes.items()}

        if cell_idx > 0:
            for s, t in cell.link_pred.edges():
                if s not in prev_index or t not in root_index:
                    raise InvariantViolationError(f"Link graph edge {(s, t)} at cell {cell_idx} does not join two roots.")
                edges.append((cell_idx - 1, prev_index[s], cell_idx, root_index[t]))

        cells.append(ReebCell(lo=cell.lo, hi=cell.hi, components=components))
        prev_index = root_index

    graph = ReebGraph(cells, edges)
    logger.info("Extracted %r", graph)
    return graph


def component_count_check(points: PointsLike, eps: float, graph: ReebGraph) -> bool:
    """Whether the graph has as many connected components as the union of the eps-balls around the points."""
    expected = len(ball_intersection_graph_components(points, eps))
    b0, _ = graph.betti()
    if b0 != expected:
        logger.warning("Reeb graph has %d components, but the ball intersection graph has %d.", b0, expected)
    return b0 == expected
