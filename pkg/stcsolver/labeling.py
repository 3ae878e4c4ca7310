"""
Strong/weak edge labelings, cluster graphs and deletion sets.

A labeling splits the edges of a host graph into a strong and a weak part.
It satisfies strong triadic closure when no induced P3 has both of its edges
strong. Deleting a set of edges that leaves a cluster graph (a disjoint union
of cliques) yields such a labeling, the cluster labeling.

Classes:
    Labeling: Partition of edge indices into strong and weak.
    DeletionSet: Edge indices removed by a cluster deletion.

Functions:
    check_partition, find_stc_violations, is_stc_labeling, is_cluster_graph,
    cluster_labeling, deletion_set_from_partition, cut_edges, is_weak_cut,
    drop_weak_cut.
"""

import logging
from dataclasses import dataclass
from itertools import combinations

from stcsolver.errors import ClusterWitnessError, LabelingContractError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Labeling:
    """
    Edge partition ``(strong, weak)`` of a host graph.

    Attributes:
        strong (frozenset): Indices of strong edges.
        weak (frozenset): Indices of weak edges.
    """

    strong: frozenset
    weak: frozenset

    @classmethod
    def from_strong(cls, g, strong):
        """Labels ``strong`` strong and every other edge of ``g`` weak."""
        strong = frozenset(strong)
        return cls(strong, frozenset(range(g.edge_count)) - strong)

    @classmethod
    def from_weak(cls, g, weak):
        """Labels ``weak`` weak and every other edge of ``g`` strong."""
        weak = frozenset(weak)
        return cls(frozenset(range(g.edge_count)) - weak, weak)

    @property
    def strong_count(self):
        return len(self.strong)

    @property
    def weak_count(self):
        return len(self.weak)


@dataclass(frozen=True)
class DeletionSet:
    """Edge indices deleted from the host graph."""

    deleted: frozenset

    @property
    def size(self):
        return len(self.deleted)


def check_partition(g, labeling):
    """
    Verifies that ``labeling`` partitions the edges of ``g``.

    Raises:
        LabelingContractError: If the parts overlap or do not cover exactly
            the edge indices of ``g``.
    """
    overlap = labeling.strong & labeling.weak
    if overlap:
        raise LabelingContractError(f"edges labeled both strong and weak: {sorted(overlap)}")
    if labeling.strong | labeling.weak != frozenset(range(g.edge_count)):
        raise LabelingContractError(
            f"labeling covers {labeling.strong_count + labeling.weak_count} "
            f"edge indices, host graph has {g.edge_count} edges"
        )


def find_stc_violations(g, labeling, find_all=False):
    """
    Lists induced P3s whose two edges are both strong.

    Args:
        g (Graph): Host graph.
        labeling (Labeling): Labeling of ``g``.
        find_all (bool): Report every violation instead of only the first.

    Returns:
        list: Conflicting edge index pairs in increasing order.
    """
    check_partition(g, labeling)
    violations = []
    for i, j in g.enumerate_p3():
        if i in labeling.strong and j in labeling.strong:
            violations.append((i, j))
            if not find_all:
                break
    return violations


def is_stc_labeling(g, labeling):
    """True iff no induced P3 of ``g`` has both edges strong under ``labeling``."""
    return not find_stc_violations(g, labeling)


def _first_p3(g):
    for center in g.vertices():
        for a, b in combinations(sorted(g.neighbors(center)), 2):
            if not g.has_edge(a, b):
                return (a, center, b)
    return None


def is_cluster_graph(g):
    """True iff ``g`` has no induced P3, i.e. every component is a clique."""
    return _first_p3(g) is None


def cluster_labeling(g, deletion):
    """
    Turns a cluster deletion set into its labeling.

    Args:
        g (Graph): Host graph.
        deletion (DeletionSet): Edges to delete.

    Returns:
        Labeling: ``strong = E - D``, ``weak = D``.

    Raises:
        ClusterWitnessError: If ``g`` minus ``deletion`` still has an induced
            P3; the error carries its vertices and edge indices in ``g``.
    """
    witness = _first_p3(g.without_edges(deletion.deleted))
    if witness is not None:
        u, center, w = witness
        raise ClusterWitnessError(witness, (g.edge_index(u, center), g.edge_index(center, w)))
    return Labeling.from_weak(g, deletion.deleted)


def deletion_set_from_partition(g, parts):
    """
    Builds the deletion set that turns ``g`` into the clusters ``parts``.

    Args:
        g (Graph): Host graph.
        parts (iterable): Disjoint vertex sets, each a clique of ``g``.

    Returns:
        DeletionSet: Edges whose endpoints lie in different parts.

    Raises:
        ValueError: If a part is not a clique.
    """
    owner = {}
    for index, part in enumerate(parts):
        part = list(part)
        if not g.is_clique(part):
            raise ValueError(f"part {sorted(part)} is not a clique")
        for v in part:
            owner[v] = index
    deleted = [
        index
        for index, (u, v) in enumerate(g.edges)
        if owner.get(u, -1) != owner.get(v, -2)
    ]
    return DeletionSet(frozenset(deleted))


def cut_edges(g, side):
    """Returns the indices of edges with exactly one endpoint in ``side``."""
    side = set(side)
    return frozenset(
        index for index, (u, v) in enumerate(g.edges) if (u in side) != (v in side)
    )


def is_weak_cut(g, labeling, side):
    """True iff every edge crossing ``(side, V - side)`` is weak in ``labeling``."""
    return cut_edges(g, side) <= labeling.weak


def drop_weak_cut(g, labeling, side):
    """
    Removes the edges of a weak cut.

    Strong triadic closure is preserved and the strong count is unchanged,
    since only weak edges disappear.

    Returns:
        tuple: ``(Graph, Labeling)`` on the graph without the cut edges.

    Raises:
        ValueError: If the cut is not weak.
    """
    crossing = cut_edges(g, side)
    if not crossing <= labeling.weak:
        raise ValueError("cut contains strong edges")
    reduced = g.without_edges(crossing)
    strong = {reduced.edge_index(*g.edges[index]) for index in labeling.strong}
    return reduced, Labeling.from_strong(reduced, strong)
