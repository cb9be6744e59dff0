"""Utilities for working with graphs."""

from typing import Hashable, Iterable, List, Set, Tuple

import networkx as nx


def find_connected_components(nodes: Iterable[Hashable], edges: Iterable[Tuple[Hashable, Hashable]]) -> List[Set]:
    """Find connected components of an undirected graph.

    Args:
        nodes: nodes of graph. Cannnot derive nodes from edges, as some may have zero degree, so we must pass in both.
        edges: edges of graph.

    Returns:
        Node sets of each connected component.
    """
    G = nx.Graph()
    G.add_nodes_from(nodes)
    G.add_edges_from(edges)

    ccs = nx.connected_components(G)
    return list(ccs)

