"""
Cluster deletion parameterized by the number of deleted edges.

Classes:
    ClusterDeletionBrancher: Depth-bounded P3 branching.

Functions:
    solve_cd_k: Decides whether at most k deletions leave a cluster graph.
"""

import logging
from itertools import combinations

from stcsolver.graph_core import iter_bits
from stcsolver.labeling import DeletionSet
from stcsolver.results import CD, SolveResult, SolveStats

logger = logging.getLogger(__name__)


class ClusterDeletionBrancher:
    """
    Search tree over induced P3s.

    At every node the clique components are set aside, the induced P3 with
    the lowest pair of edge indices is picked and the search branches on
    deleting either of its two edges. A node is pruned when a greedy packing
    of edge-disjoint P3s already needs more deletions than the budget left.

    Attributes:
        graph (Graph): Input graph.
        nodes_explored (int): Search nodes visited.
        rules_fired (int): Clique components set aside.
    """

    def __init__(self, graph):
        self.graph = graph
        self.nodes_explored = 0
        self.rules_fired = 0
        self.logger = logging.getLogger(__name__)
        self._masks = [graph.neighbor_mask(v) for v in graph.vertices()]
        self._deleted = []

    def _components(self):
        remaining = self.graph.full_mask
        while remaining:
            frontier = remaining & -remaining
            component = 0
            while frontier:
                component |= frontier
                reach = 0
                for v in iter_bits(frontier):
                    reach |= self._masks[v]
                frontier = reach & ~component
            remaining &= ~component
            yield component

    def _is_clique(self, component):
        return all(
            (component & ~(1 << v)) & ~self._masks[v] == 0 for v in iter_bits(component)
        )

    def _conflicts(self):
        conflicts = []
        for component in self._components():
            if self._is_clique(component):
                self.rules_fired += 1
                continue
            for center in iter_bits(component):
                for a, b in combinations(list(iter_bits(self._masks[center])), 2):
                    if (self._masks[a] >> b) & 1:
                        continue
                    i = self.graph.edge_index(a, center)
                    j = self.graph.edge_index(center, b)
                    conflicts.append((i, j) if i < j else (j, i))
        conflicts.sort()
        return conflicts

    @staticmethod
    def _packing_bound(conflicts):
        used = set()
        packed = 0
        for i, j in conflicts:
            if i not in used and j not in used:
                used.update((i, j))
                packed += 1
        return packed

    def _toggle(self, index):
        u, v = self.graph.edges[index]
        self._masks[u] ^= 1 << v
        self._masks[v] ^= 1 << u

    def _search(self, budget):
        self.nodes_explored += 1
        conflicts = self._conflicts()
        if not conflicts:
            return True
        if budget == 0 or self._packing_bound(conflicts) > budget:
            return False
        for index in conflicts[0]:
            self._toggle(index)
            self._deleted.append(index)
            if self._search(budget - 1):
                return True
            self._deleted.pop()
            self._toggle(index)
        return False

    def minimum_deletion(self, budget):
        """
        Finds a minimum deletion set if one of size at most ``budget`` exists.

        Depths are tried in increasing order starting from the packing bound,
        so the first success is minimum.

        Returns:
            DeletionSet | None: The deletion set, or None.
        """
        start = self._packing_bound(self._conflicts())
        for depth in range(start, budget + 1):
            self._deleted = []
            if self._search(depth):
                self.logger.debug("Cluster deletion optimum is %d.", depth)
                return DeletionSet(frozenset(self._deleted))
        return None


def solve_cd_k(g, k):
    """
    Decides whether at most ``k`` edge deletions turn ``g`` into a cluster graph.

    Args:
        g (Graph): Input graph.
        k (int): Deletion budget, ``>= 0``.

    Returns:
        SolveResult: On yes, a minimum DeletionSet; ``objective`` is its size.
    """
    if k < 0:
        raise ValueError("k must be non-negative")
    stats = SolveStats()
    brancher = ClusterDeletionBrancher(g)
    deletion = brancher.minimum_deletion(k)
    stats.nodes_explored = brancher.nodes_explored
    stats.rules_fired = brancher.rules_fired
    if deletion is None:
        logger.info("No cluster deletion with at most %d edges.", k)
        return SolveResult(CD, "k", k, False, None, None, "p3-branching", g.edge_count, stats.stop())
    logger.info("Cluster deletion found with %d deletions (budget %d).", deletion.size, k)
    return SolveResult(CD, "k", k, True, deletion.size, deletion, "p3-branching",
                       g.edge_count, stats.stop())
