"""
Matchings: the greedy maximal matching and a blossom maximum matching.

Classes:
    Matching: A set of pairwise disjoint edges of a host graph.

Functions:
    maximal_matching: Greedy matching over edges in index order.
    maximum_matching: Maximum-cardinality matching.
"""

import logging
from dataclasses import dataclass

import networkx as nx

logger = logging.getLogger(__name__)

MAXIMAL = "maximal"
MAXIMUM = "maximum"


@dataclass(frozen=True)
class Matching:
    """
    A matching given by edge indices of its host graph.

    Attributes:
        edges (frozenset): Indices of the matched edges.
        kind (str): ``"maximal"`` or ``"maximum"``.
    """

    edges: frozenset
    kind: str

    @property
    def size(self):
        return len(self.edges)

    def vertices(self, g):
        """Returns the set of matched vertices of ``g``."""
        return {v for index in self.edges for v in g.edges[index]}

    def is_valid(self, g):
        """True iff no two member edges of ``g`` share an endpoint."""
        covered = [v for index in self.edges for v in g.edges[index]]
        return len(covered) == len(set(covered))


def maximal_matching(g):
    """
    Greedily matches edges in ascending index order.

    Args:
        g (Graph): Host graph.

    Returns:
        Matching: A maximal matching of kind ``"maximal"``.
    """
    matched = set()
    chosen = []
    for index, (u, v) in enumerate(g.edges):
        if u not in matched and v not in matched:
            matched.update((u, v))
            chosen.append(index)
    return Matching(frozenset(chosen), MAXIMAL)


def maximum_matching(g):
    """
    Maximum-cardinality matching.

    Runs the O(n^3) blossom algorithm of ``networkx.max_weight_matching`` with
    unit weights and ``maxcardinality=True``.

    Args:
        g (Graph): Host graph.

    Returns:
        Matching: A matching of kind ``"maximum"``.
    """
    pairs = nx.max_weight_matching(g.to_networkx(), maxcardinality=True)
    chosen = frozenset(g.edge_index(u, v) for u, v in pairs)
    logger.debug("Maximum matching of size %d on %d vertices.", len(chosen), g.vertex_count)
    return Matching(chosen, MAXIMUM)
