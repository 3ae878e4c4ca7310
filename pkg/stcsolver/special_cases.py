"""
Small forbidden patterns, their recognition, and polynomial-time special cases.

The catalog holds every graph on three or four vertices under a stable
lowercase token. On graphs free of certain patterns both problems can be
solved in polynomial time, and an optimal cluster labeling is also an optimal
STC-labeling:

* P3-free graphs are cluster graphs already, so every edge is strong.
* Triangle-free graphs: the strong edges of an optimum form a maximum matching.
* Cographs (P4-free): repeatedly peel a maximum clique found on the cotree.
* Paw-free graphs: every component is triangle-free or complete multipartite.

Classes:
    Cotree: Union/join decomposition tree of a cograph.

Functions:
    find_induced, find_coclaw, build_cotree, solve_triangle_free,
    solve_p3_free, solve_cograph, solve_paw_free, dispatch, solve_polynomial,
    correspondence_table.
"""

import logging
from dataclasses import dataclass, replace
from itertools import combinations

import networkx as nx

from stcsolver.errors import InternalConsistencyError, PreconditionError, UnknownPatternError
from stcsolver.graph_core import Graph, iter_bits, popcount, to_mask
from stcsolver.labeling import Labeling, cluster_labeling, deletion_set_from_partition, is_cluster_graph
from stcsolver.matching import maximum_matching
from stcsolver.results import SolveResult, SolveStats

logger = logging.getLogger(__name__)

JOINT = "stc+cd"

_PATTERN_EDGES = {
    "k3": (3, [(0, 1), (0, 2), (1, 2)]),
    "p3": (3, [(0, 1), (1, 2)]),
    "k2k1": (3, [(0, 1)]),
    "3k1": (3, []),
    "p4": (4, [(0, 1), (1, 2), (2, 3)]),
    "k4": (4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]),
    "diamond": (4, [(0, 1), (0, 2), (0, 3), (1, 2), (2, 3)]),
    "c4": (4, [(0, 1), (1, 2), (2, 3), (0, 3)]),
    "paw": (4, [(0, 1), (0, 2), (1, 2), (0, 3)]),
    "claw": (4, [(0, 1), (0, 2), (0, 3)]),
    "co-diamond": (4, [(1, 3)]),
    "2k2": (4, [(0, 1), (2, 3)]),
    "co-paw": (4, [(1, 3), (2, 3)]),
    "co-claw": (4, [(1, 2), (1, 3), (2, 3)]),
    "4k1": (4, []),
}

PATTERNS = {
    name: Graph.from_edge_list(n, edges) for name, (n, edges) in _PATTERN_EDGES.items()
}

COMPLEMENT_PAIRS = (
    ("k3", "3k1"),
    ("p3", "k2k1"),
    ("p4", "p4"),
    ("k4", "4k1"),
    ("diamond", "co-diamond"),
    ("c4", "2k2"),
    ("paw", "co-paw"),
    ("claw", "co-claw"),
)

_CORRESPONDENCE = {
    "k3": (True, "P"),
    "p3": (True, "P"),
    "k2k1": (True, "P"),
    "p4": (True, "P"),
    "paw": (True, "P"),
    "diamond": (True, "NP-hard"),
    "3k1": (False, "NP-hard"),
    "k4": (False, "NP-hard"),
    "4k1": (False, "NP-hard"),
    "c4": (False, "NP-hard"),
    "2k2": (False, "NP-hard"),
    "claw": (False, "NP-hard"),
    "co-claw": (False, "NP-hard"),
    "co-diamond": (False, "NP-hard"),
    "co-paw": (False, "NP-hard"),
}


def _signature(masks, vertices):
    chosen = to_mask(vertices)
    return tuple(sorted(popcount(masks[v] & chosen) for v in vertices))


# On three or four vertices the degree sequence determines the graph.
_SIGNATURES = {
    name: _signature([pattern.neighbor_mask(v) for v in pattern.vertices()], tuple(pattern.vertices()))
    for name, pattern in PATTERNS.items()
}


def _pattern(name):
    if name not in PATTERNS:
        raise UnknownPatternError(f"unknown pattern {name!r}; expected one of {sorted(PATTERNS)}")
    return PATTERNS[name]


def find_induced(g, name):
    """
    Finds the first vertex tuple inducing the named pattern.

    Args:
        g (Graph): Host graph.
        name (str): Catalog token such as ``"p4"`` or ``"co-claw"``.

    Returns:
        tuple | None: Sorted witness vertices, the lexicographically first
        one, or None when ``g`` is free of the pattern.

    Raises:
        UnknownPatternError: If ``name`` is not in the catalog.
    """
    pattern = _pattern(name)
    target = _SIGNATURES[name]
    masks = [g.neighbor_mask(v) for v in g.vertices()]
    for vertices in combinations(g.vertices(), pattern.vertex_count):
        if _signature(masks, vertices) == target:
            return vertices
    return None


def find_coclaw(g):
    """
    Looks for a triangle inside the non-neighborhood of some vertex.

    Equivalent to ``find_induced(g, "co-claw") is not None`` but fast enough
    for gadget outputs with a hundred vertices.

    Returns:
        tuple | None: Sorted witness vertices or None.
    """
    full = g.full_mask
    for w in g.vertices():
        outside = full & ~g.neighbor_mask(w) & ~(1 << w)
        for a in iter_bits(outside):
            for b in iter_bits(g.neighbor_mask(a) & outside & ~((2 << a) - 1)):
                common = g.neighbor_mask(a) & g.neighbor_mask(b) & outside & ~((2 << b) - 1)
                if common:
                    c = (common & -common).bit_length() - 1
                    return tuple(sorted((w, a, b, c)))
    return None


@dataclass(frozen=True)
class Cotree:
    """
    Node of a cotree.

    Leaves carry a vertex; ``"union"`` nodes are disjoint unions of their
    children and ``"join"`` nodes connect every pair of vertices taken from
    different children.
    """

    kind: str
    vertex: object = None
    children: tuple = ()

    def leaves(self):
        if self.kind == "leaf":
            return [self.vertex]
        return [v for child in self.children for v in child.leaves()]

    def to_graph(self, n):
        """Rebuilds the graph on ``n`` vertices that this tree describes."""
        edges = set()
        stack = [self]
        while stack:
            node = stack.pop()
            stack.extend(node.children)
            if node.kind != "join":
                continue
            groups = [child.leaves() for child in node.children]
            for first, second in combinations(groups, 2):
                edges.update((min(u, v), max(u, v)) for u in first for v in second)
        return Graph(n, sorted(edges))

    def maximum_clique(self):
        """Maximum clique: the largest child clique at unions, all child cliques at joins."""
        if self.kind == "leaf":
            return frozenset((self.vertex,))
        cliques = [child.maximum_clique() for child in self.children]
        if self.kind == "join":
            return frozenset().union(*cliques)
        return max(cliques, key=len)


def _co_components(g, vertices):
    """Connected components of the complement of ``g[vertices]``."""
    complement = nx.complement(g.to_networkx().subgraph(vertices))
    return sorted((frozenset(part) for part in nx.connected_components(complement)), key=min)


def _decompose(g, vertices):
    if len(vertices) == 1:
        (vertex,) = vertices
        return Cotree("leaf", vertex)
    parts = g.connected_components(within=vertices)
    kind = "union"
    if len(parts) == 1:
        parts = _co_components(g, vertices)
        kind = "join"
    if len(parts) == 1:
        sub, vertex_map = g.induced_subgraph(vertices)
        witness = find_induced(sub, "p4")
        raise PreconditionError("p4", None if witness is None else tuple(vertex_map[v] for v in witness))
    return Cotree(kind, None, tuple(_decompose(g, part) for part in parts))


def build_cotree(g):
    """
    Builds the cotree of ``g``.

    Raises:
        PreconditionError: If ``g`` contains an induced P4.
        ValueError: If ``g`` has no vertices.
    """
    if g.vertex_count == 0:
        raise ValueError("the empty graph has no cotree")
    return _decompose(g, frozenset(g.vertices()))


def _require_free(g, name):
    witness = find_induced(g, name)
    if witness is not None:
        raise PreconditionError(name, witness)


def _joint_result(g, labeling, solver, stats):
    return SolveResult(JOINT, "ell", None, True, labeling.strong_count, labeling, solver,
                       g.edge_count, stats.stop())


def solve_triangle_free(g):
    """
    Optimum of a triangle-free graph: a maximum matching is the strong set.

    Raises:
        PreconditionError: With a triangle as witness.
    """
    stats = SolveStats()
    _require_free(g, "k3")
    labeling = Labeling.from_strong(g, maximum_matching(g).edges)
    return _joint_result(g, labeling, "triangle-free", stats)


def solve_p3_free(g):
    """
    Optimum of a cluster graph: every edge strong.

    Raises:
        PreconditionError: With an induced P3 as witness.
    """
    stats = SolveStats()
    _require_free(g, "p3")
    return _joint_result(g, Labeling.from_strong(g, range(g.edge_count)), "p3-free", stats)


def solve_cograph(g):
    """
    Optimal clustering of a cograph by greedy maximum-clique peeling.

    Returns:
        SolveResult: A cluster labeling, optimal for both problems.

    Raises:
        PreconditionError: With an induced P4 as witness.
    """
    stats = SolveStats()
    _require_free(g, "p4")
    remaining = set(g.vertices())
    clusters = []
    while remaining:
        sub, vertex_map = g.induced_subgraph(remaining)
        clique = {vertex_map[v] for v in build_cotree(sub).maximum_clique()}
        clusters.append(clique)
        remaining -= clique
        stats.nodes_explored += 1
    labeling = cluster_labeling(g, deletion_set_from_partition(g, clusters))
    logger.debug("Cograph peeled into %d clusters.", len(clusters))
    return _joint_result(g, labeling, "cograph", stats)


def solve_paw_free(g):
    """
    Solves each component as triangle-free or complete multipartite.

    Raises:
        PreconditionError: With an induced paw as witness.
        InternalConsistencyError: If a component with a triangle is not
            complete multipartite.
    """
    stats = SolveStats()
    _require_free(g, "paw")
    strong = set()
    for component in g.connected_components():
        sub, vertex_map = g.induced_subgraph(component)
        if find_induced(sub, "k3") is None:
            part = solve_triangle_free(sub)
        elif is_cluster_graph(sub.complement()):
            part = solve_cograph(sub)
        else:
            raise InternalConsistencyError(
                f"paw-free component {sorted(component)} has a triangle "
                "but is not complete multipartite"
            )
        stats.nodes_explored += 1
        strong.update(
            g.edge_index(vertex_map[u], vertex_map[v])
            for u, v in (sub.edges[index] for index in part.certificate.strong)
        )
    return _joint_result(g, Labeling.from_strong(g, strong), "paw-free", stats)


SOLVERS = {
    "p3-free": solve_p3_free,
    "triangle-free": solve_triangle_free,
    "cograph": solve_cograph,
    "paw-free": solve_paw_free,
}


def dispatch(g):
    """
    Picks the first applicable polynomial solver.

    Checks run in the order P3-free, K3-free, P4-free, paw-free and
    K2+K1-free (handled by the paw-free solver). The first match wins, so a
    graph in several classes goes to the earliest one: ``K3`` is P3-free and
    is tagged ``"p3-free"`` even though the cograph solver also applies.

    Returns:
        str: A key of ``SOLVERS`` or ``"exponential"``.
    """
    for name, tag in (("p3", "p3-free"), ("k3", "triangle-free"), ("p4", "cograph"),
                      ("paw", "paw-free"), ("k2k1", "paw-free")):
        if find_induced(g, name) is None:
            return tag
    return "exponential"


def solve_polynomial(g, problem=JOINT):
    """
    Runs the solver chosen by ``dispatch``.

    Returns:
        SolveResult | None: None when no polynomial solver applies.
    """
    tag = dispatch(g)
    if tag == "exponential":
        return None
    return replace(SOLVERS[tag](g), problem=problem)


def correspondence_table(name):
    """
    Returns whether STC and CD correspond on ``name``-free graphs and the
    complexity of both problems there.

    Raises:
        UnknownPatternError: If ``name`` is not in the catalog.
    """
    _pattern(name)
    corresponds, complexity = _CORRESPONDENCE[name]
    return {"corresponds": corresponds, "complexity": complexity}
