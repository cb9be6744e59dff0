"""Explicit Reeb graph: one vertex per connected component of f^{-1}(J) for every cell J, edges between consecutive cells.

Serialized as JSON with the schema

    {"cells": [{"lo": .., "lo_closed": .., "hi": .., "hi_closed": .., "components": [[point ids]]}],
     "edges": [[cell_idx, comp_idx, cell_idx + 1, comp_idx]],
     "critical_values": [..]}

where infinite bounds are written as null. Cells with no components are kept so the JSON round-trips exactly.
"""

import json
import math
import os
from collections import defaultdict
from dataclasses import dataclass
from typing import Any, Dict, Iterable, List, Sequence, Tuple, Union

import graphviz
import networkx as nx

import reebsweep.utils.io as io_utils
from reebsweep.common.cell import CellBound, bounds_contain, bounds_to_str
from reebsweep.common.errors import ContractViolationError

_PathLike = Union[str, "os.PathLike[str]"]

# (cell index, component index) of the lower endpoint, then of the upper endpoint.
EdgeTuple = Tuple[int, int, int, int]

EDGE_KIND_REGULAR = "regular"
EDGE_KIND_MERGE = "merge"
EDGE_KIND_SPLIT = "split"


@dataclass(frozen=True)
class ReebCell:
    """A cell of the minimal partition of the reals, with its components as sorted point-id tuples."""

    lo: CellBound
    hi: CellBound
    components: Tuple[Tuple[int, ...], ...]

    def contains(self, x: float) -> bool:
        return bounds_contain(self.lo, self.hi, x)


@dataclass(frozen=True)
class ReebVertex:
    """A connected component of f^{-1}(J) for one cell J.

    Attributes:
        id: vertex index, in order of (cell, component).
        cell_index: index of the cell J.
        component_index: index of the component within the cell.
        lo: lower bound of J.
        hi: upper bound of J.
        members: sorted ids of the points whose balls form the component.
    """

    id: int
    cell_index: int
    component_index: int
    lo: CellBound
    hi: CellBound
    members: Tuple[int, ...]

    @property
    def extent(self) -> Tuple[float, float]:
        """Function values spanned by the vertex."""
        return (self.lo.value, self.hi.value)

    @property
    def label(self) -> str:
        """Member set and extent, e.g. `{0,1} [0,2]`."""
        return "{" + ",".join(str(p) for p in self.members) + "}" + f" [{self.lo.value:g},{self.hi.value:g}]"


@dataclass(frozen=True)
class ReebEdge:
    """Edge from a vertex of cell J (source) to a vertex of J.succ (target)."""

    source: int
    target: int
    kind: str


def canonical_components(classes: Iterable[Iterable[int]]) -> Tuple[Tuple[int, ...], ...]:
    """Sort members within each class, and classes by their smallest member."""
    return tuple(sorted(tuple(sorted(c)) for c in classes))


class ReebGraph:
    """Cells of the minimal partition of the reals with their components, and the edges between them."""

    def __init__(self, cells: Sequence[ReebCell], edges: Iterable[EdgeTuple]) -> None:
        """Validate and index cells and edges.

        Raises:
            ContractViolationError: if an edge does not join intersecting components of consecutive cells.
        """
        self.cells_ = list(cells)
        self.edges_ = sorted(set(tuple(e) for e in edges))

        for i, j, k, l in self.edges_:
            if k != i + 1 or not (0 <= i and k < len(self.cells_)):
                raise ContractViolationError(f"Edge {(i, j, k, l)} must join consecutive cells.")
            if not (0 <= j < len(self.cells_[i].components) and 0 <= l < len(self.cells_[k].components)):
                raise ContractViolationError(f"Edge {(i, j, k, l)} refers to a missing component.")
            if set(self.cells_[i].components[j]).isdisjoint(self.cells_[k].components[l]):
                raise ContractViolationError(f"Edge {(i, j, k, l)} joins disjoint member sets.")

        self._vertex_ids: Dict[Tuple[int, int], int] = {}
        self._vertices: List[ReebVertex] = []
        for cell_idx, cell in enumerate(self.cells_):
            for comp_idx, members in enumerate(cell.components):
                vertex_id = len(self._vertices)
                self._vertex_ids[(cell_idx, comp_idx)] = vertex_id
                self._vertices.append(
                    ReebVertex(
                        id=vertex_id,
                        cell_index=cell_idx,
                        component_index=comp_idx,
                        lo=cell.lo,
                        hi=cell.hi,
                        members=members,
                    )
                )

    @classmethod
    def empty(cls) -> "ReebGraph":
        """The graph of empty input: the single cell R with no components."""
        return cls([ReebCell(CellBound.neg_inf(), CellBound.pos_inf(), ())], [])

    @property
    def cells(self) -> List[ReebCell]:
        return self.cells_

    @property
    def vertices(self) -> List[ReebVertex]:
        return self._vertices

    @property
    def edge_tuples(self) -> List[EdgeTuple]:
        return self.edges_

    @property
    def edges(self) -> List[ReebEdge]:
        down_degree, up_degree = self._degrees()
        reeb_edges = []
        for i, j, k, l in self.edges_:
            u = self._vertex_ids[(i, j)]
            v = self._vertex_ids[(k, l)]
            if down_degree[v] > 1:
                kind = EDGE_KIND_MERGE
            elif up_degree[u] > 1:
                kind = EDGE_KIND_SPLIT
            else:
                kind = EDGE_KIND_REGULAR
            reeb_edges.append(ReebEdge(source=u, target=v, kind=kind))
        return reeb_edges

    @property
    def num_vertices(self) -> int:
        return len(self._vertices)

    @property
    def num_edges(self) -> int:
        return len(self.edges_)

    @property
    def num_cells(self) -> int:
        return len(self.cells_)

    @property
    def critical_values(self) -> List[float]:
        """Finite cell boundaries, ascending."""
        values = {cell.hi.value for cell in self.cells_[:-1]}
        return sorted(v for v in values if math.isfinite(v))

    def _degrees(self) -> Tuple[Dict[int, int], Dict[int, int]]:
        down_degree: Dict[int, int] = defaultdict(int)
        up_degree: Dict[int, int] = defaultdict(int)
        for i, j, k, l in self.edges_:
            up_degree[self._vertex_ids[(i, j)]] += 1
            down_degree[self._vertex_ids[(k, l)]] += 1
        return down_degree, up_degree

    def vertex_events(self) -> Dict[int, List[str]]:
        """Map vertex id to its events: `birth` if no edge reaches it from below, `death` if none leaves upwards."""
        down_degree, up_degree = self._degrees()
        events = {}
        for v in self._vertices:
            kinds = []
            if down_degree[v.id] == 0:
                kinds.append("birth")
            if up_degree[v.id] == 0:
                kinds.append("death")
            if kinds:
                events[v.id] = kinds
        return events

    def description_size(self) -> int:
        """Number of stored (cell, point) incidences, the size of the output description."""
        return sum(len(members) for cell in self.cells_ for members in cell.components)

    def cell_containing(self, x: float) -> ReebCell:
        for cell in self.cells_:
            if cell.contains(x):
                return cell
        raise ContractViolationError(f"No cell contains level {x}.")

    def to_networkx(self) -> nx.Graph:
        """Undirected graph on vertex ids, with members, cell index and extent as node attributes."""
        G = nx.Graph()
        for v in self._vertices:
            G.add_node(v.id, members=v.members, cell_index=v.cell_index, extent=v.extent)
        for edge in self.edges:
            G.add_edge(edge.source, edge.target, kind=edge.kind)
        return G

    def betti(self) -> Tuple[int, int]:
        """Return (b0, b1): the number of connected components and the number of independent cycles."""
        G = self.to_networkx()
        b0 = nx.number_connected_components(G) if G.number_of_nodes() > 0 else 0
        b1 = G.number_of_edges() - G.number_of_nodes() + b0
        return b0, b1

    def is_equivalent(self, other: "ReebGraph") -> bool:
        """Cell-by-cell equality of ranges, component families and edges."""
        return self.to_dict() == other.to_dict()

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ReebGraph):
            return False
        return self.is_equivalent(other)

    def __repr__(self) -> str:
        b0, b1 = self.betti()
        return f"ReebGraph(cells={self.num_cells}, vertices={self.num_vertices}, edges={self.num_edges}, b0={b0}, b1={b1})"

    def summary(self) -> str:
        """Per-cell listing, one line per cell."""
        lines = []
        for cell in self.cells_:
            family = ", ".join("{" + ",".join(str(p) for p in c) + "}" for c in cell.components) or "{}"
            lines.append(f"{bounds_to_str(cell.lo, cell.hi)}: {family}")
        return "\n".join(lines)

    def to_dict(self) -> Dict[str, Any]:
        cells = []
        for cell in self.cells_:
            entry: Dict[str, Any] = {}
            entry.update(cell.lo.to_dict("lo"))
            entry.update(cell.hi.to_dict("hi"))
            entry["components"] = [list(c) for c in cell.components]
            cells.append(entry)
        return {
            "cells": cells,
            "edges": [list(e) for e in self.edges_],
            "critical_values": self.critical_values,
        }

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "ReebGraph":
        cells = [
            ReebCell(
                lo=CellBound.from_dict(entry, "lo", is_lower=True),
                hi=CellBound.from_dict(entry, "hi", is_lower=False),
                components=canonical_components(entry["components"]),
            )
            for entry in data["cells"]
        ]
        return cls(cells, [tuple(e) for e in data["edges"]])

    def to_json(self) -> str:
        """Deterministic JSON text."""
        return json.dumps(self.to_dict(), indent=2)

    @classmethod
    def from_json(cls, text: str) -> "ReebGraph":
        return cls.from_dict(json.loads(text))

    def save_as_json(self, save_fpath: _PathLike) -> None:
        io_utils.save_json_file(save_fpath, self.to_dict())

    @classmethod
    def from_json_file(cls, json_fpath: _PathLike) -> "ReebGraph":
        return cls.from_dict(io_utils.read_json_file(json_fpath))

    def to_graphviz(self, name: str = "reeb") -> graphviz.Digraph:
        """Graphviz digraph drawn bottom-to-top, with the vertices of each cell on one rank."""
        dot = graphviz.Digraph(name=name)
        if self.num_vertices == 0:
            return dot
        dot.attr(rankdir="BT")
        vertices_by_cell: Dict[int, List[ReebVertex]] = defaultdict(list)
        for v in self._vertices:
            vertices_by_cell[v.cell_index].append(v)
        for cell_idx in sorted(vertices_by_cell):
            with dot.subgraph() as rank:
                rank.attr(rank="same")
                for v in vertices_by_cell[cell_idx]:
                    rank.node(f"v{v.id}", label=v.label)
        for edge in self.edges:
            dot.edge(f"v{edge.source}", f"v{edge.target}")
        return dot

    def to_dot(self, name: str = "reeb") -> str:
        """Graphviz DOT text."""
        return self.to_graphviz(name=name).source
