"""
Immutable simple undirected graphs and the primitive queries built on them.

Vertices are the integers ``0..n-1``. Vertex sets are passed either as
iterables of vertex indices or as integer bitmasks (bit ``v`` set iff ``v`` is
a member); ``to_mask`` and ``iter_bits`` convert between the two forms.

Classes:
    Graph: Simple undirected graph with stable edge indices.

Functions:
    to_mask: Bitmask of an iterable of vertices.
    iter_bits: Members of a bitmask in increasing order.
    popcount: Number of members of a bitmask.
"""

import logging
from itertools import combinations

import networkx as nx

from stcsolver.errors import GraphInputError

logger = logging.getLogger(__name__)


def to_mask(vertices):
    """Return the bitmask with one bit set per vertex in ``vertices``."""
    mask = 0
    for v in vertices:
        mask |= 1 << v
    return mask


def iter_bits(mask):
    """Yield the set bit positions of ``mask`` in increasing order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def popcount(mask):
    """Return the number of set bits of ``mask``."""
    return bin(mask).count("1")


class Graph:
    """
    A simple undirected graph that never changes after construction.

    Edge ``i`` is the ``i``-th pair handed to ``from_edge_list``, stored as
    ``(u, v)`` with ``u < v``. Two graphs compare equal when they have the same
    vertex count and the same edge set, whatever the edge order.

    Attributes:
        vertex_count (int): Number of vertices ``n``.
        edges (tuple): Canonical ``(u, v)`` pairs in index order.
        adjacency (tuple): Per-vertex frozensets of neighbors.
    """

    __slots__ = ("_vertex_count", "_edges", "_adjacency", "_masks", "_edge_ids")

    def __init__(self, vertex_count, edges):
        """
        Builds the graph from already canonical edges.

        Use ``Graph.from_edge_list`` for unvalidated input.

        Args:
            vertex_count (int): Number of vertices.
            edges (iterable): Distinct ``(u, v)`` pairs with ``u < v``.
        """
        self._vertex_count = vertex_count
        self._edges = tuple(edges)
        neighbors = [set() for _ in range(vertex_count)]
        masks = [0] * vertex_count
        for u, v in self._edges:
            neighbors[u].add(v)
            neighbors[v].add(u)
            masks[u] |= 1 << v
            masks[v] |= 1 << u
        self._adjacency = tuple(frozenset(nbrs) for nbrs in neighbors)
        self._masks = tuple(masks)
        self._edge_ids = {edge: index for index, edge in enumerate(self._edges)}

    @classmethod
    def from_edge_list(cls, n, pairs):
        """
        Validates an edge list and builds the canonical graph.

        Args:
            n (int): Number of vertices.
            pairs (iterable): Vertex pairs, in the order that fixes edge indices.

        Returns:
            Graph: The canonical graph.

        Raises:
            GraphInputError: On a self-loop, an out-of-range vertex or a
                duplicate edge, naming the offending pair.
        """
        if n < 0:
            raise GraphInputError("negative vertex count", (n,))
        seen = set()
        canonical = []
        for pair in pairs:
            u, v = (int(x) for x in pair)
            if u == v:
                raise GraphInputError("self-loop", (u, v))
            if not (0 <= u < n and 0 <= v < n):
                raise GraphInputError("vertex out of range", (u, v))
            key = (u, v) if u < v else (v, u)
            if key in seen:
                raise GraphInputError("duplicate edge", (u, v))
            seen.add(key)
            canonical.append(key)
        return cls(n, canonical)

    @property
    def vertex_count(self):
        return self._vertex_count

    @property
    def edge_count(self):
        return len(self._edges)

    @property
    def edges(self):
        return self._edges

    @property
    def adjacency(self):
        return self._adjacency

    @property
    def full_mask(self):
        """Bitmask of all vertices."""
        return (1 << self._vertex_count) - 1

    def vertices(self):
        return range(self._vertex_count)

    def neighbors(self, v):
        return self._adjacency[v]

    def neighbor_mask(self, v):
        return self._masks[v]

    def degree(self, v):
        return len(self._adjacency[v])

    def has_edge(self, u, v):
        return v in self._adjacency[u]

    def edge_index(self, u, v):
        """
        Returns the index of edge ``{u, v}``.

        Raises:
            KeyError: If ``{u, v}`` is not an edge.
        """
        return self._edge_ids[(u, v) if u < v else (v, u)]

    def enumerate_p3(self):
        """
        Lists every induced P3 as a sorted pair of edge indices.

        Each induced path ``u - v - w`` has a unique middle vertex, so every
        conflict is reported exactly once. The list is sorted.

        Returns:
            list: ``(i, j)`` tuples with ``i < j``.
        """
        conflicts = []
        for center in range(self._vertex_count):
            for a, b in combinations(sorted(self._adjacency[center]), 2):
                if b in self._adjacency[a]:
                    continue
                i = self.edge_index(a, center)
                j = self.edge_index(center, b)
                conflicts.append((i, j) if i < j else (j, i))
        conflicts.sort()
        return conflicts

    def p3_vertices(self, i, j):
        """
        Returns the path ``(u, center, w)`` formed by edges ``i`` and ``j``.

        Raises:
            ValueError: If the two edges do not share exactly one endpoint.
        """
        first, second = set(self._edges[i]), set(self._edges[j])
        shared = first & second
        if len(shared) != 1:
            raise ValueError(f"edges {i} and {j} do not form a path")
        (center,) = shared
        (u,) = first - shared
        (w,) = second - shared
        return (u, center, w)

    def induced_subgraph(self, s):
        """
        Builds the subgraph induced by ``s`` with vertices relabeled.

        Args:
            s (iterable | int): Vertex set, as an iterable or a bitmask.

        Returns:
            tuple: ``(Graph, vertex_map)`` where ``vertex_map[i]`` is the
            original index of new vertex ``i``. Relabeling preserves order.
        """
        members = sorted(iter_bits(s)) if isinstance(s, int) else sorted(set(s))
        position = {v: i for i, v in enumerate(members)}
        kept = [
            (position[u], position[v])
            for u, v in self._edges
            if u in position and v in position
        ]
        return Graph(len(members), kept), tuple(members)

    def remove_vertices(self, s):
        """Returns ``induced_subgraph`` of the vertices outside ``s``."""
        removed = set(iter_bits(s)) if isinstance(s, int) else set(s)
        return self.induced_subgraph(v for v in self.vertices() if v not in removed)

    def without_edges(self, indices):
        """Returns the graph on the same vertices without the given edges."""
        dropped = set(indices)
        return Graph(
            self._vertex_count,
            [edge for index, edge in enumerate(self._edges) if index not in dropped],
        )

    def is_clique(self, s):
        """True iff the vertices of ``s`` (iterable or bitmask) are pairwise adjacent."""
        mask = s if isinstance(s, int) else to_mask(s)
        for v in iter_bits(mask):
            if (mask & ~(1 << v)) & ~self._masks[v]:
                return False
        return True

    def to_networkx(self):
        """Returns the graph as a ``networkx.Graph`` on nodes ``0..n-1``."""
        nx_graph = nx.Graph()
        nx_graph.add_nodes_from(range(self._vertex_count))
        nx_graph.add_edges_from(self._edges)
        return nx_graph

    def complement(self):
        """Returns the complement, its edges listed in lexicographic order."""
        complement = nx.complement(self.to_networkx())
        return Graph(self._vertex_count, sorted((min(e), max(e)) for e in complement.edges))

    def connected_components(self, within=None):
        """
        Splits the graph into connected components.

        Args:
            within (iterable, optional): Restrict to the subgraph induced by
                these vertices.

        Returns:
            list: Frozensets of vertices, ordered by smallest member.
        """
        nx_graph = self.to_networkx()
        if within is not None:
            nx_graph = nx_graph.subgraph(within)
        return sorted((frozenset(part) for part in nx.connected_components(nx_graph)), key=min)

    def __eq__(self, other):
        if not isinstance(other, Graph):
            return NotImplemented
        return (
            self._vertex_count == other._vertex_count
            and set(self._edges) == set(other._edges)
        )

    def __hash__(self):
        return hash((self._vertex_count, frozenset(self._edges)))

    def __repr__(self):
        return f"Graph(n={self._vertex_count}, m={len(self._edges)})"
