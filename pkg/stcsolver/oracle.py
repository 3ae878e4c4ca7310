"""
Brute-force ground truth for strong triadic closure and cluster deletion.

The oracles share no search code with the solvers: conflicts are found by
their own scan over vertex triples, and cluster deletion is solved by
enumerating vertex partitions.

Classes:
    OracleBudget: Size limits, overridable from the environment.
    CorrespondenceReport: Both optima of one graph.

Functions:
    brute_stc_optimum, brute_stc_raw, brute_cd_optimum, correspondence_check.
"""

import logging
import os
from dataclasses import dataclass
from itertools import combinations

from stcsolver.errors import ConfigurationError, OracleBudgetExceeded
from stcsolver.graph_core import popcount
from stcsolver.labeling import Labeling, deletion_set_from_partition

logger = logging.getLogger(__name__)

RAW_ENUMERATION_MAX_EDGES = 16


def _read_limit(variable, default):
    raw = os.getenv(variable)
    if raw is None or raw.strip() == "":
        return default
    try:
        value = int(raw)
    except ValueError as err:
        raise ConfigurationError(f"{variable} must be an integer, got {raw!r}") from err
    if value <= 0:
        raise ConfigurationError(f"{variable} must be positive, got {value}")
    return value


@dataclass(frozen=True)
class OracleBudget:
    """
    Largest instances the oracles accept.

    Attributes:
        max_edges (int): Edge limit of the STC search.
        max_vertices (int): Vertex limit of the CD partition search.
    """

    max_edges: int = 20
    max_vertices: int = 10

    def __post_init__(self):
        if self.max_edges <= 0 or self.max_vertices <= 0:
            raise ValueError("oracle budgets must be positive")

    @classmethod
    def from_env(cls):
        """Reads ``ORACLE_MAX_EDGES`` and ``ORACLE_MAX_VERTICES``, falling back to defaults."""
        return cls(
            max_edges=_read_limit("ORACLE_MAX_EDGES", cls.max_edges),
            max_vertices=_read_limit("ORACLE_MAX_VERTICES", cls.max_vertices),
        )


def _conflict_masks(g):
    """For every edge, the bitmask of edges forming an induced P3 with it."""
    masks = [0] * g.edge_count
    for triple in combinations(g.vertices(), 3):
        for center in triple:
            u, w = (x for x in triple if x != center)
            if g.has_edge(u, center) and g.has_edge(center, w) and not g.has_edge(u, w):
                i, j = g.edge_index(u, center), g.edge_index(center, w)
                masks[i] |= 1 << j
                masks[j] |= 1 << i
    return masks


def brute_stc_optimum(g, budget=None):
    """
    Maximum number of strong edges, by branching over the edges.

    Edges are decided in index order (strong first, then weak); a strong edge
    blocks every edge it conflicts with, and a branch is cut when the
    unblocked edges left cannot beat the best count.

    Args:
        g (Graph): Input graph.
        budget (OracleBudget, optional): Defaults to ``OracleBudget.from_env()``.

    Returns:
        tuple: ``(strong_count, Labeling)``.

    Raises:
        OracleBudgetExceeded: If ``g`` has more than ``max_edges`` edges.
    """
    budget = budget or OracleBudget.from_env()
    m = g.edge_count
    if m > budget.max_edges:
        raise OracleBudgetExceeded("ORACLE_MAX_EDGES", budget.max_edges, m)
    conflicts = _conflict_masks(g)
    all_edges = (1 << m) - 1
    best = [-1, 0]

    def branch(index, chosen, blocked, count):
        free = popcount((all_edges >> index << index) & ~blocked)
        if count + free <= best[0]:
            return
        if index == m:
            best[0], best[1] = count, chosen
            return
        if not (blocked >> index) & 1:
            branch(index + 1, chosen | (1 << index), blocked | conflicts[index], count + 1)
        branch(index + 1, chosen, blocked, count)

    branch(0, 0, 0, 0)
    strong = [i for i in range(m) if (best[1] >> i) & 1]
    return best[0], Labeling.from_strong(g, strong)


def brute_stc_raw(g):
    """
    Maximum number of strong edges over all ``2**m`` edge subsets.

    Raises:
        OracleBudgetExceeded: If ``g`` has more than 16 edges.
    """
    m = g.edge_count
    if m > RAW_ENUMERATION_MAX_EDGES:
        raise OracleBudgetExceeded("RAW_ENUMERATION_MAX_EDGES", RAW_ENUMERATION_MAX_EDGES, m)
    conflicts = _conflict_masks(g)
    pairs = [(1 << i) | (1 << j) for i in range(m) for j in range(i + 1, m) if (conflicts[i] >> j) & 1]
    best_count, best_mask = -1, 0
    for mask in range(1 << m):
        count = popcount(mask)
        if count <= best_count:
            continue
        if all(mask & pair != pair for pair in pairs):
            best_count, best_mask = count, mask
    return best_count, Labeling.from_strong(g, [i for i in range(m) if (best_mask >> i) & 1])


def brute_cd_optimum(g, budget=None):
    """
    Maximum number of cluster edges over all partitions of V into cliques.

    Vertices are placed in order ``0..n-1``, each into an existing part it is
    fully adjacent to or into a new part.

    Args:
        g (Graph): Input graph.
        budget (OracleBudget, optional): Defaults to ``OracleBudget.from_env()``.

    Returns:
        tuple: ``(cluster_edge_count, DeletionSet)``.

    Raises:
        OracleBudgetExceeded: If ``g`` has more than ``max_vertices`` vertices.
    """
    budget = budget or OracleBudget.from_env()
    n = g.vertex_count
    if n > budget.max_vertices:
        raise OracleBudgetExceeded("ORACLE_MAX_VERTICES", budget.max_vertices, n)
    masks = [g.neighbor_mask(v) for v in g.vertices()]
    # Placing vertex v gains at most its number of earlier neighbors.
    remaining_gain = [0] * (n + 1)
    for v in range(n - 1, -1, -1):
        remaining_gain[v] = remaining_gain[v + 1] + popcount(masks[v] & ((1 << v) - 1))
    parts = []
    best = [-1, []]

    def place(v, value):
        if value + remaining_gain[v] <= best[0]:
            return
        if v == n:
            best[0], best[1] = value, [list(part) for part in parts]
            return
        for part in parts:
            if all(masks[v] >> u & 1 for u in part):
                part.append(v)
                place(v + 1, value + len(part) - 1)
                part.pop()
        parts.append([v])
        place(v + 1, value)
        parts.pop()

    place(0, 0)
    return best[0], deletion_set_from_partition(g, best[1])


@dataclass(frozen=True)
class CorrespondenceReport:
    """Oracle optima of one graph and whether they coincide."""

    stc_opt: int
    cd_opt: int

    @property
    def corresponds(self):
        return self.stc_opt == self.cd_opt

    def as_dict(self):
        return {"stc": self.stc_opt, "cd": self.cd_opt, "corresponds": self.corresponds}


def correspondence_check(g, budget=None):
    """
    Compares the STC and CD optima of ``g``.

    Raises:
        OracleBudgetExceeded: If either oracle budget is exceeded.
    """
    budget = budget or OracleBudget.from_env()
    stc_opt, _ = brute_stc_optimum(g, budget)
    cd_opt, _ = brute_cd_optimum(g, budget)
    if cd_opt > stc_opt:
        logger.error("Cluster optimum %d exceeds STC optimum %d.", cd_opt, stc_opt)
    return CorrespondenceReport(stc_opt, cd_opt)
