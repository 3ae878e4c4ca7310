"""
Kernelizations for strong triadic closure.

Two reduction rules shrink an instance while keeping its answer:

* Rule 1 works on critical cliques (maximal vertex sets sharing one closed
  neighborhood). A closed critical clique ``K`` whose size exceeds the number
  of edges between its neighborhood and its second neighborhood is removed
  together with its neighborhood; those boundary edges become weak, so the
  weak budget ``k`` drops by their number. Exhaustive application leaves at
  most ``4k`` vertices in a yes-instance.
* Rule 2 works with a maximum matching ``M`` for a strong target ``ell``.
  Unmatched vertices with the same neighborhood form a family ``F``; when
  ``|F| > |N(F)|`` the surplus members are deleted. ``ell`` is unchanged.

Classes:
    CriticalCliqueDecomposition: Critical cliques, their graph and closed flags.
    TraceEntry: One rule application.
    ReducedInstance: Reduced graph, adjusted budget and trace.

Functions:
    critical_cliques, rule1_apply_once, kernelize_k, lift_labeling,
    rule2_apply, partition_bounds, kernel_size_bound_check.
"""

import logging
from dataclasses import dataclass, field

from stcsolver.labeling import Labeling
from stcsolver.matching import maximum_matching

logger = logging.getLogger(__name__)

RULE1 = "rule1"
RULE2 = "rule2"
MATCHING_SHORT_CIRCUIT = "matching-short-circuit"


@dataclass(frozen=True)
class CriticalCliqueDecomposition:
    """
    Partition of the vertices into critical cliques.

    Attributes:
        graph (Graph): Decomposed graph.
        cliques (tuple): Frozensets of vertices, ordered by smallest member.
        cc_adjacency (tuple): For each clique, the indices of adjacent cliques.
        closed_flags (tuple): For each clique, whether its neighborhood is a clique.
        clique_of (tuple): Index of the clique containing each vertex.
    """

    graph: object
    cliques: tuple
    cc_adjacency: tuple
    closed_flags: tuple
    clique_of: tuple

    def neighborhood(self, index):
        """Vertices adjacent to clique ``index`` outside of it."""
        return frozenset().union(*(self.cliques[j] for j in self.cc_adjacency[index]))

    def second_neighborhood(self, index):
        """Vertices at distance exactly two from clique ``index``."""
        near = set(self.cc_adjacency[index]) | {index}
        far = set()
        for j in self.cc_adjacency[index]:
            far.update(self.cc_adjacency[j])
        return frozenset().union(*(self.cliques[j] for j in far - near))

    def boundary_edges(self, index):
        """Edges between the neighborhood and the second neighborhood, sorted by index."""
        inner = self.neighborhood(index)
        outer = self.second_neighborhood(index)
        g = self.graph
        return sorted(
            (
                (min(u, w), max(u, w))
                for u in inner
                for w in g.neighbors(u)
                if w in outer
            ),
            key=lambda pair: g.edge_index(*pair),
        )


def critical_cliques(g):
    """
    Groups vertices by closed neighborhood.

    Args:
        g (Graph): Input graph.

    Returns:
        CriticalCliqueDecomposition: The decomposition of ``g``.
    """
    groups = {}
    for v in g.vertices():
        groups.setdefault(g.neighbors(v) | {v}, []).append(v)
    cliques = tuple(frozenset(members) for members in groups.values())
    clique_of = [0] * g.vertex_count
    for index, clique in enumerate(cliques):
        for v in clique:
            clique_of[v] = index
    cc_adjacency = []
    for index, clique in enumerate(cliques):
        representative = min(clique)
        cc_adjacency.append(
            frozenset(clique_of[w] for w in g.neighbors(representative)) - {index}
        )
    decomposition = CriticalCliqueDecomposition(
        g, cliques, tuple(cc_adjacency), (), tuple(clique_of)
    )
    closed = tuple(
        g.is_clique(decomposition.neighborhood(index)) for index in range(len(cliques))
    )
    return CriticalCliqueDecomposition(
        g, cliques, tuple(cc_adjacency), closed, tuple(clique_of)
    )


@dataclass(frozen=True)
class TraceEntry:
    """
    One rule application.

    Attributes:
        rule (str): ``"rule1"``, ``"rule2"`` or ``"matching-short-circuit"``.
        removed (tuple): Removed vertices, original indices.
        budget_delta (int): Decrease of the weak budget ``k``.
        boundary_edges (tuple): Rule 1 only, the removed edges that become
            weak, as original vertex pairs.
    """

    rule: str
    removed: tuple
    budget_delta: int
    boundary_edges: tuple = ()

    def to_dict(self, one_indexed=False):
        offset = 1 if one_indexed else 0
        return {
            "rule": self.rule,
            "removed": [v + offset for v in self.removed],
            "budget_delta": self.budget_delta,
        }


@dataclass(frozen=True)
class ReducedInstance:
    """
    Result of a kernelization.

    ``budget`` is the adjusted weak budget ``k'`` for Rule 1 (negative once a
    ``"no"`` verdict fired on budget exhaustion) and the unchanged target
    ``ell`` for Rule 2.

    Attributes:
        graph (Graph): Reduced graph.
        budget (int): Adjusted budget.
        trace (tuple): TraceEntry objects in application order.
        vertex_map (tuple): Original index of every reduced vertex.
        verdict (str | None): ``"yes"``, ``"no"`` or None when undecided.
        reason (str | None): Why a verdict was reached.
        partition (dict): Rule 2 only, ``V_M``, ``I_2`` and ``I_1`` of the
            reduced graph in original indices.
    """

    graph: object
    budget: int
    trace: tuple
    vertex_map: tuple
    verdict: object = None
    reason: object = None
    partition: dict = field(default_factory=dict)


def _apply_rule1(g, k, vertex_map):
    decomposition = critical_cliques(g)
    for index, clique in enumerate(decomposition.cliques):
        if not decomposition.closed_flags[index]:
            continue
        boundary = decomposition.boundary_edges(index)
        if len(clique) <= len(boundary):
            continue
        removed = clique | decomposition.neighborhood(index)
        entry = TraceEntry(
            RULE1,
            tuple(sorted(vertex_map[v] for v in removed)),
            len(boundary),
            tuple((vertex_map[u], vertex_map[w]) for u, w in boundary),
        )
        reduced, sub_map = g.remove_vertices(removed)
        return reduced, k - len(boundary), tuple(vertex_map[v] for v in sub_map), entry
    return None


def rule1_apply_once(g, k):
    """
    Applies Rule 1 to the qualifying clique with the smallest vertex.

    Args:
        g (Graph): Input graph.
        k (int): Weak-edge budget, ``>= 0``.

    Returns:
        ReducedInstance | None: None when no closed critical clique is larger
        than its boundary; verdict ``"no"`` when the budget goes negative.
    """
    applied = _apply_rule1(g, k, tuple(g.vertices()))
    if applied is None:
        return None
    reduced, budget, vertex_map, entry = applied
    verdict, reason = (("no", "budget exhausted") if budget < 0 else (None, None))
    return ReducedInstance(reduced, budget, (entry,), vertex_map, verdict, reason)


def kernelize_k(g, k):
    """
    Applies Rule 1 exhaustively, recomputing the decomposition each time.

    The result never claims ``"yes"``; it reports ``"no"`` when the budget
    runs out or more than ``4k'`` vertices remain.

    Args:
        g (Graph): Input graph.
        k (int): Weak-edge budget, ``>= 0``.

    Returns:
        ReducedInstance: Equivalent instance at the adjusted budget.
    """
    if k < 0:
        raise ValueError("k must be non-negative")
    work, budget, vertex_map = g, k, tuple(g.vertices())
    trace = []
    while True:
        applied = _apply_rule1(work, budget, vertex_map)
        if applied is None:
            break
        work, budget, vertex_map, entry = applied
        trace.append(entry)
        logger.debug("Rule 1 removed %s, budget now %d.", entry.removed, budget)
        if budget < 0:
            return ReducedInstance(work, budget, tuple(trace), vertex_map, "no", "budget exhausted")
    if work.vertex_count > 4 * budget:
        return ReducedInstance(
            work, budget, tuple(trace), vertex_map, "no",
            f"{work.vertex_count} vertices exceed the 4k bound ({4 * budget})",
        )
    logger.debug("Kernel has %d vertices, k'=%d after %d applications.",
                 work.vertex_count, budget, len(trace))
    return ReducedInstance(work, budget, tuple(trace), vertex_map)


def lift_labeling(g, reduced, labeling):
    """
    Maps a labeling of a Rule 1 kernel back to the original graph.

    Removed boundary edges become weak, every other removed edge strong.

    Args:
        g (Graph): Original graph.
        reduced (ReducedInstance): Output of ``kernelize_k`` on ``g``.
        labeling (Labeling): Labeling of ``reduced.graph``.

    Returns:
        Labeling: Labeling of ``g``.
    """
    vertex_map = reduced.vertex_map
    weak = {
        g.edge_index(vertex_map[u], vertex_map[v])
        for u, v in (reduced.graph.edges[index] for index in labeling.weak)
    }
    for entry in reduced.trace:
        weak.update(g.edge_index(u, v) for u, v in entry.boundary_edges)
    return Labeling.from_weak(g, weak)


def rule2_apply(g, ell):
    """
    Applies Rule 2 to every family of unmatched vertices.

    Args:
        g (Graph): Input graph.
        ell (int): Strong-edge target, ``>= 0``.

    Returns:
        ReducedInstance: Verdict ``"yes"`` when the maximum matching already
        reaches ``ell``; otherwise the reduced graph with ``budget = ell``.
    """
    if ell < 0:
        raise ValueError("ell must be non-negative")
    matching = maximum_matching(g)
    identity = tuple(g.vertices())
    if matching.size >= ell:
        entry = TraceEntry(MATCHING_SHORT_CIRCUIT, (), 0)
        return ReducedInstance(g, ell, (entry,), identity, "yes",
                               f"maximum matching of size {matching.size}")

    matched = matching.vertices(g)
    matched_edges = [g.edges[index] for index in sorted(matching.edges)]
    independent_2 = []
    families = {}
    for v in g.vertices():
        if v in matched:
            continue
        if any(g.has_edge(v, a) and g.has_edge(v, b) for a, b in matched_edges):
            independent_2.append(v)
        else:
            families.setdefault(g.neighbors(v), []).append(v)

    removed = []
    trace = []
    for neighbourhood, members in families.items():
        surplus = len(members) - len(neighbourhood)
        if surplus <= 0:
            continue
        dropped = members[-surplus:]
        removed.extend(dropped)
        trace.append(TraceEntry(RULE2, tuple(dropped), surplus * len(neighbourhood)))
        logger.debug("Rule 2 deleted %s from a family of %d.", dropped, len(members))

    reduced, vertex_map = g.remove_vertices(removed)
    dropped_set = set(removed)
    partition = {
        "V_M": tuple(sorted(matched)),
        "I_2": tuple(independent_2),
        "I_1": tuple(
            v for members in families.values() for v in members if v not in dropped_set
        ),
    }
    return ReducedInstance(reduced, ell, tuple(trace), vertex_map, partition=partition)


def partition_bounds(ri, ell):
    """
    Checks the three part sizes of a Rule 2 kernel.

    Returns:
        dict: ``{part: (size, bound, holds)}`` for ``V_M`` (< 2 ell),
        ``I_2`` (<= ell) and ``I_1`` (<= ell * 2**ell).
    """
    sizes = {name: len(ri.partition.get(name, ())) for name in ("V_M", "I_2", "I_1")}
    return {
        "V_M": (sizes["V_M"], 2 * ell, sizes["V_M"] < 2 * ell),
        "I_2": (sizes["I_2"], ell, sizes["I_2"] <= ell),
        "I_1": (sizes["I_1"], ell * 2 ** ell, sizes["I_1"] <= ell * 2 ** ell),
    }


def kernel_size_bound_check(ri, ell):
    """True iff the reduced graph has at most ``2 ell + ell + ell * 2**ell`` vertices."""
    return ri.graph.vertex_count <= 2 * ell + ell + ell * 2 ** ell
