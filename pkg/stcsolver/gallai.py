"""
Gallai (conflict) graph and the vertex-cover route to strong triadic closure.

The Gallai graph has one node per edge of the host graph and joins the two
edges of every induced P3. A strong set is valid exactly when it is
independent there, so a minimum set of weak edges is a minimum vertex cover.

Classes:
    ConflictGraph: Gallai graph of a host graph.
    VertexCoverSolver: Branch-and-bound vertex cover with degree reductions.

Functions:
    gallai_graph: Builds the conflict graph.
    min_vertex_cover: Minimum cover within a budget, or None.
    solve_stc_k: Decides STC for a weak-edge budget k.
    approximate_stc: Factor-2 labeling from a maximal conflict matching.
"""

import logging
from dataclasses import dataclass

from stcsolver.kernels import kernelize_k, lift_labeling
from stcsolver.labeling import Labeling
from stcsolver.results import STC, SolveResult, SolveStats

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ConflictGraph:
    """
    Conflict graph over the edge indices of ``host``.

    Attributes:
        host (Graph): Source graph.
        node_count (int): Equals ``host.edge_count``.
        pairs (tuple): Conflicting ``(i, j)`` pairs, ``i < j``, sorted.
        conflicts (tuple): Per-node frozensets of conflicting nodes.
    """

    host: object
    node_count: int
    pairs: tuple
    conflicts: tuple

    def is_independent(self, nodes):
        nodes = set(nodes)
        return not any(i in nodes and j in nodes for i, j in self.pairs)

    def is_cover(self, nodes):
        nodes = set(nodes)
        return all(i in nodes or j in nodes for i, j in self.pairs)


def gallai_graph(g):
    """Builds the conflict graph of ``g`` from its induced P3s."""
    pairs = tuple(g.enumerate_p3())
    conflicts = [set() for _ in range(g.edge_count)]
    for i, j in pairs:
        conflicts[i].add(j)
        conflicts[j].add(i)
    return ConflictGraph(g, g.edge_count, pairs, tuple(frozenset(c) for c in conflicts))


def _remove_node(adjacency, node):
    for other in adjacency.pop(node, ()):
        neighbours = adjacency[other]
        neighbours.discard(node)
        if not neighbours:
            del adjacency[other]


class VertexCoverSolver:
    """
    Exact vertex cover by bounded branching.

    Every search node drops isolated nodes, takes the neighbor of each
    degree-1 node, prunes when ``edges > budget * max_degree`` and branches on
    a maximum-degree node (lowest index on ties): take it, or take all of its
    neighbors.

    Attributes:
        conflict_graph (ConflictGraph): Graph to cover.
        nodes_explored (int): Search nodes visited so far.
    """

    def __init__(self, conflict_graph):
        self.conflict_graph = conflict_graph
        self.nodes_explored = 0
        self.logger = logging.getLogger(__name__)

    def _initial_adjacency(self):
        return {
            node: set(others)
            for node, others in enumerate(self.conflict_graph.conflicts)
            if others
        }

    def _search(self, adjacency, budget):
        """Returns a cover of ``adjacency`` with at most ``budget`` nodes, or None."""
        self.nodes_explored += 1
        if budget < 0:
            return None
        adjacency = {node: set(others) for node, others in adjacency.items()}
        cover = set()
        reduced = True
        while reduced:
            reduced = False
            for node in sorted(adjacency):
                if node in adjacency and len(adjacency[node]) == 1:
                    (other,) = adjacency[node]
                    cover.add(other)
                    budget -= 1
                    if budget < 0:
                        return None
                    _remove_node(adjacency, other)
                    reduced = True
        if not adjacency:
            return cover
        if budget <= 0:
            return None
        max_degree = max(len(others) for others in adjacency.values())
        edge_count = sum(len(others) for others in adjacency.values()) // 2
        if edge_count > budget * max_degree:
            return None
        pivot = min(adjacency, key=lambda node: (-len(adjacency[node]), node))

        branch = {node: set(others) for node, others in adjacency.items()}
        _remove_node(branch, pivot)
        found = self._search(branch, budget - 1)
        if found is not None:
            return cover | {pivot} | found

        neighbours = set(adjacency[pivot])
        if len(neighbours) <= budget:
            branch = {node: set(others) for node, others in adjacency.items()}
            for other in neighbours:
                _remove_node(branch, other)
            found = self._search(branch, budget - len(neighbours))
            if found is not None:
                return cover | neighbours | found
        return None

    def _lower_bound(self):
        matched = set()
        size = 0
        for i, j in self.conflict_graph.pairs:
            if i not in matched and j not in matched:
                matched.update((i, j))
                size += 1
        return size

    def _canonical_cover(self, size):
        """
        Returns the lexicographically smallest cover of the given minimum size.

        Nodes are decided in increasing order: a node is taken whenever a
        cover of the remaining budget still exists with it, otherwise all of
        its remaining neighbors are taken.
        """
        adjacency = self._initial_adjacency()
        budget = size
        chosen = set()
        for node in range(self.conflict_graph.node_count):
            if node not in adjacency:
                continue
            trial = {other: set(nbrs) for other, nbrs in adjacency.items()}
            _remove_node(trial, node)
            if self._search(trial, budget - 1) is not None:
                chosen.add(node)
                adjacency = trial
                budget -= 1
                continue
            for other in sorted(adjacency[node]):
                chosen.add(other)
                budget -= 1
                _remove_node(adjacency, other)
        return frozenset(chosen)

    def minimum_cover(self, budget):
        """
        Finds a minimum vertex cover if its size is at most ``budget``.

        Args:
            budget (int): Largest acceptable cover size, ``>= 0``.

        Returns:
            frozenset | None: The lexicographically smallest minimum cover,
            or None when every cover exceeds the budget.
        """
        if budget < 0:
            raise ValueError("budget must be non-negative")
        adjacency = self._initial_adjacency()
        for size in range(self._lower_bound(), budget + 1):
            if self._search(adjacency, size) is not None:
                self.logger.debug("Minimum conflict cover has %d nodes.", size)
                return self._canonical_cover(size)
        return None


def min_vertex_cover(cg, k):
    """
    Minimum vertex cover of ``cg`` if one of size at most ``k`` exists.

    Returns:
        frozenset | None: Cover as edge indices of the host graph, or None
        when the budget is exceeded.
    """
    return VertexCoverSolver(cg).minimum_cover(k)


def solve_stc_k(g, k, use_kernel=True):
    """
    Decides whether ``g`` has an STC-labeling with at most ``k`` weak edges.

    With ``use_kernel`` the critical-clique kernel runs first; the labeling
    of the reduced graph is lifted back to ``g``. The weak edges are a
    minimum vertex cover of the conflict graph, so a yes certificate is
    optimal.

    Args:
        g (Graph): Input graph.
        k (int): Weak-edge budget, ``>= 0``.
        use_kernel (bool): Run the kernel before searching.

    Returns:
        SolveResult: ``objective`` is the number of weak edges.
    """
    if k < 0:
        raise ValueError("k must be non-negative")
    stats = SolveStats()
    trace = ()
    reduced = None
    work, budget = g, k
    if use_kernel:
        reduced = kernelize_k(g, k)
        trace = reduced.trace
        stats.rules_fired = len(trace)
        if reduced.verdict == "no":
            logger.info("Kernel rejected k=%d (%s).", k, reduced.reason)
            return SolveResult(STC, "k", k, False, None, None, "gallai-vc", g.edge_count,
                               stats.stop(), trace)
        work, budget = reduced.graph, reduced.budget

    solver = VertexCoverSolver(gallai_graph(work))
    cover = solver.minimum_cover(budget)
    stats.nodes_explored = solver.nodes_explored
    if cover is None:
        logger.info("No STC-labeling with at most %d weak edges.", k)
        return SolveResult(STC, "k", k, False, None, None, "gallai-vc", g.edge_count,
                           stats.stop(), trace)

    labeling = Labeling.from_weak(work, cover)
    if reduced is not None:
        labeling = lift_labeling(g, reduced, labeling)
    logger.info("STC-labeling found with %d weak edges (budget %d).", labeling.weak_count, k)
    return SolveResult(STC, "k", k, True, labeling.weak_count, labeling, "gallai-vc",
                       g.edge_count, stats.stop(), trace)


def approximate_stc(g):
    """
    Labels both endpoints of a greedy maximal conflict matching weak.

    The weak set is a vertex cover of the conflict graph and at most twice
    the size of a minimum one.

    Returns:
        SolveResult: Always feasible, tagged ``gallai-2approx``.
    """
    stats = SolveStats()
    weak = set()
    for i, j in g.enumerate_p3():
        if i not in weak and j not in weak:
            weak.update((i, j))
    labeling = Labeling.from_weak(g, weak)
    return SolveResult(STC, "k", None, True, labeling.weak_count, labeling, "gallai-2approx",
                       g.edge_count, stats.stop())
