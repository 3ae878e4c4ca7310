"""
Solvers parameterized by the number ``ell`` of strong (cluster) edges.

Both algorithms start from a greedy maximal matching ``M``. If ``|M| >= ell``
the matching itself is a certificate. Otherwise the matched vertices form a
vertex cover ``C`` with fewer than ``2 ell`` vertices, the remaining vertices
``I`` are independent, and a dynamic program over the subsets of ``C`` adds
the vertices of ``I`` one at a time.

Table rows are indexed by ``i`` (the first ``i`` vertices of ``I`` are placed)
and columns by the bitmask of a subset ``C'`` of ``C``:

* Cluster deletion: ``T[i, C']`` is the largest number of cluster edges of a
  clustering of ``G[C' + {1..i}]``.
* Strong triadic closure, for a fixed labeling ``S_C`` of ``G[C]``:
  ``T[i, C']`` is the largest strong count when the strong neighbors of
  ``1..i`` lie inside ``C'``, pairwise disjoint.

Classes:
    CoverContext: Cover, independent side and precomputed bitmasks.
    DpTable: Filled table with back-pointers.
    PartialLabeling: Strong edges chosen inside ``G[C]``.

Functions:
    build_cd_table, build_stc_table, valid_strong_neighbor_sets,
    partial_labelings, solve_cd_ell, solve_stc_ell.
"""

import logging
from dataclasses import dataclass
from math import comb

import numpy as np

from stcsolver.errors import ParameterTooLargeError
from stcsolver.gallai import VertexCoverSolver, gallai_graph
from stcsolver.graph_core import iter_bits, popcount
from stcsolver.labeling import DeletionSet, Labeling, deletion_set_from_partition
from stcsolver.matching import maximal_matching
from stcsolver.results import CD, STC, SolveResult, SolveStats

logger = logging.getLogger(__name__)

MAX_COVER_VERTICES = 24


def _submasks(mask):
    """Yields every submask of ``mask`` in decreasing numeric order, ending with 0."""
    sub = mask
    while True:
        yield sub
        if sub == 0:
            return
        sub = (sub - 1) & mask


class CoverContext:
    """
    Bitmask view of a vertex cover ``C`` and its independent complement.

    Cover vertex ``cover[j]`` owns bit ``j``.

    Attributes:
        graph (Graph): Host graph.
        cover (tuple): Sorted cover vertices.
        independent (tuple): Sorted vertices outside the cover.
        local_adjacency (list): Cover-neighbors of each cover vertex, as masks.
        neighbor_masks (dict): Cover-neighbors of each independent vertex.
        clique_flags (numpy.ndarray): ``clique_flags[mask]`` iff ``mask`` is a clique.
        popcounts (numpy.ndarray): Member count of every mask.
    """

    def __init__(self, graph, cover):
        cover = tuple(sorted(cover))
        if len(cover) > MAX_COVER_VERTICES:
            raise ParameterTooLargeError(
                f"cover has {len(cover)} vertices; at most {MAX_COVER_VERTICES} "
                "are supported at desk scale"
            )
        self.graph = graph
        self.cover = cover
        self.position = {v: j for j, v in enumerate(cover)}
        self.independent = tuple(v for v in graph.vertices() if v not in self.position)
        self.local_adjacency = [self.local_mask(graph.neighbors(c)) for c in cover]
        self.neighbor_masks = {i: self.local_mask(graph.neighbors(i)) for i in self.independent}
        size = 1 << len(cover)
        self.masks = np.arange(size, dtype=np.int64)
        self.popcounts = np.array([popcount(m) for m in range(size)], dtype=np.int64)
        flags = np.zeros(size, dtype=bool)
        flags[0] = True
        for mask in range(1, size):
            low = mask & -mask
            rest = mask ^ low
            flags[mask] = flags[rest] and not (rest & ~self.local_adjacency[low.bit_length() - 1])
        self.clique_flags = flags

    @property
    def full(self):
        return (1 << len(self.cover)) - 1

    def local_mask(self, vertices):
        mask = 0
        for v in vertices:
            j = self.position.get(v)
            if j is not None:
                mask |= 1 << j
        return mask

    def members(self, mask):
        return frozenset(self.cover[j] for j in iter_bits(mask))

    def strong_adjacency(self, strong_edges):
        """Per cover vertex, the mask of its strong neighbors inside ``C``."""
        adjacency = [0] * len(self.cover)
        for index in strong_edges:
            u, v = self.graph.edges[index]
            adjacency[self.position[u]] |= 1 << self.position[v]
            adjacency[self.position[v]] |= 1 << self.position[u]
        return adjacency

    def clique_submasks(self, mask):
        """Nonempty clique submasks of ``mask`` in increasing order."""
        return sorted(sub for sub in _submasks(mask) if sub and self.clique_flags[sub])

    def valid_masks(self, i, strong_adjacency):
        """
        Nonempty masks that may be the strong cover-neighbors of ``i``.

        A mask is valid when it is a clique inside ``N(i)`` and none of its
        members has a strong neighbor in ``C`` outside ``N(i)``.
        """
        neighbours = self.neighbor_masks[i]
        outside = self.full & ~neighbours
        allowed = 0
        for j in iter_bits(neighbours):
            if not strong_adjacency[j] & outside:
                allowed |= 1 << j
        return self.clique_submasks(allowed)


@dataclass(frozen=True)
class PartialLabeling:
    """Strong edges ``S_C`` inside ``G[C]``, as edge indices of the host graph."""

    strong_in_cover: frozenset

    @property
    def size(self):
        return len(self.strong_in_cover)


@dataclass
class DpTable:
    """
    Filled dynamic-programming table.

    Attributes:
        context (CoverContext): Cover and independent side.
        entries (numpy.ndarray): ``entries[i, mask]`` table values.
        choices (numpy.ndarray): Mask chosen for each entry.
        partial (PartialLabeling | None): ``S_C`` for strong triadic closure tables.
    """

    context: CoverContext
    entries: np.ndarray
    choices: np.ndarray
    partial: object = None

    @property
    def cover(self):
        return self.context.cover

    @property
    def independent(self):
        return self.context.independent

    @property
    def value(self):
        return int(self.entries[-1, self.context.full])

    def is_monotone(self):
        """True iff every row is monotone under inclusion of ``C'``."""
        masks = self.context.masks
        for j in range(len(self.cover)):
            bit = 1 << j
            upper = masks[(masks & bit) != 0]
            if np.any(self.entries[:, upper] < self.entries[:, upper ^ bit]):
                return False
        return True

    def picks(self):
        """
        Follows back-pointers from ``T[|I|, C]``.

        Returns:
            list: ``(vertex, cover_members)`` per independent vertex, then
            ``(None, cover_members)`` for every cover-only cluster of row 0.
        """
        mask = self.context.full
        chosen = []
        for row in range(len(self.independent), 0, -1):
            sub = int(self.choices[row, mask])
            chosen.append((self.independent[row - 1], self.context.members(sub)))
            mask ^= sub
        if self.partial is None:
            while mask:
                sub = int(self.choices[0, mask])
                chosen.append((None, self.context.members(sub)))
                mask ^= sub
        return chosen


def _relax(entries, choices, row, source, sub, gain, masks):
    """Applies ``T[row, C'] = max(T[row, C'], T[source, C' - sub] + gain)`` to all ``C' >= sub``."""
    upper = masks[(masks & sub) == sub]
    candidate = entries[source, upper ^ sub] + gain
    better = candidate > entries[row, upper]
    entries[row, upper[better]] = candidate[better]
    choices[row, upper[better]] = sub


def build_cd_table(g, cover):
    """
    Fills the cluster deletion table over ``cover``.

    Row 0: ``T[0, C'] = max T[0, C' - C''] + C(|C''|, 2)`` over nonempty
    cliques ``C''``, filled layer by layer in ``|C'|``. Row ``i``:
    ``T[i, C'] = max T[i-1, C' - C''] + C(|C''| + 1, 2)`` over cliques
    ``C''`` (possibly empty) inside ``N(i)``.

    Returns:
        DpTable: The filled table.
    """
    context = cover if isinstance(cover, CoverContext) else CoverContext(g, cover)
    masks = context.masks
    rows = len(context.independent) + 1
    entries = np.full((rows, masks.size), -1, dtype=np.int64)
    choices = np.zeros((rows, masks.size), dtype=np.int64)
    entries[0, 0] = 0
    cliques = context.clique_submasks(context.full)
    for layer in range(1, len(context.cover) + 1):
        layer_masks = masks[context.popcounts == layer]
        for sub in cliques:
            size = int(context.popcounts[sub])
            if size > layer:
                continue
            upper = layer_masks[(layer_masks & sub) == sub]
            candidate = entries[0, upper ^ sub] + comb(size, 2)
            better = candidate > entries[0, upper]
            entries[0, upper[better]] = candidate[better]
            choices[0, upper[better]] = sub
    for row, vertex in enumerate(context.independent, start=1):
        entries[row] = entries[row - 1]
        for sub in context.clique_submasks(context.neighbor_masks[vertex]):
            _relax(entries, choices, row, row - 1, sub, comb(int(context.popcounts[sub]) + 1, 2), masks)
    return DpTable(context, entries, choices)


def build_stc_table(g, cover, partial):
    """
    Fills the strong triadic closure table for one partial labeling.

    Row 0 holds ``|S_C|`` everywhere. Row ``i``:
    ``T[i, C'] = max T[i-1, C' - C''] + |C''|`` over the valid strong
    neighbor sets ``C''`` of ``i``.

    Returns:
        DpTable: The filled table.
    """
    context = cover if isinstance(cover, CoverContext) else CoverContext(g, cover)
    masks = context.masks
    rows = len(context.independent) + 1
    entries = np.full((rows, masks.size), partial.size, dtype=np.int64)
    choices = np.zeros((rows, masks.size), dtype=np.int64)
    strong_adjacency = context.strong_adjacency(partial.strong_in_cover)
    for row, vertex in enumerate(context.independent, start=1):
        entries[row] = entries[row - 1]
        for sub in context.valid_masks(vertex, strong_adjacency):
            _relax(entries, choices, row, row - 1, sub, int(context.popcounts[sub]), masks)
    return DpTable(context, entries, choices, partial)


def valid_strong_neighbor_sets(g, cover, partial, i):
    """
    Lists the admissible strong cover-neighborhoods of independent vertex ``i``.

    Args:
        g (Graph): Host graph.
        cover (iterable): Vertex cover ``C``.
        partial (PartialLabeling | iterable): Strong edges inside ``G[C]``.
        i (int): Vertex outside the cover.

    Returns:
        list: Frozensets of cover vertices, the empty set first.
    """
    context = CoverContext(g, cover)
    if not isinstance(partial, PartialLabeling):
        partial = PartialLabeling(frozenset(partial))
    if i in context.position:
        raise ValueError(f"vertex {i} belongs to the cover")
    strong_adjacency = context.strong_adjacency(partial.strong_in_cover)
    return [frozenset()] + [context.members(m) for m in context.valid_masks(i, strong_adjacency)]


def partial_labelings(g, cover, size):
    """
    Yields the valid labelings of ``G[C]`` with exactly ``size`` strong edges.

    Subsets are produced in lexicographic order of edge index; branches that
    would put both edges of an induced P3 of ``G[C]`` into the set are cut.
    """
    cover_set = set(cover)
    cover_edges = [i for i, (u, v) in enumerate(g.edges) if u in cover_set and v in cover_set]
    sub, vertex_map = g.induced_subgraph(cover_set)
    blocked_by = {index: set() for index in cover_edges}
    for a, b in sub.enumerate_p3():
        i = g.edge_index(*(vertex_map[x] for x in sub.edges[a]))
        j = g.edge_index(*(vertex_map[x] for x in sub.edges[b]))
        blocked_by[i].add(j)
        blocked_by[j].add(i)

    def extend(start, chosen, blocked):
        if len(chosen) == size:
            yield PartialLabeling(frozenset(chosen))
            return
        for position in range(start, len(cover_edges) - (size - len(chosen)) + 1):
            index = cover_edges[position]
            if index in blocked:
                continue
            chosen.append(index)
            yield from extend(position + 1, chosen, blocked | blocked_by[index])
            chosen.pop()

    yield from extend(0, [], frozenset())


def solve_cd_ell(g, ell):
    """
    Decides whether ``g`` has a clustering with at least ``ell`` cluster edges.

    Args:
        g (Graph): Input graph.
        ell (int): Cluster-edge target, ``>= 0``.

    Returns:
        SolveResult: ``objective`` is the number of cluster edges of the
        certificate (a DeletionSet).

    Raises:
        ParameterTooLargeError: If the cover exceeds ``MAX_COVER_VERTICES``.
    """
    if ell < 0:
        raise ValueError("ell must be non-negative")
    stats = SolveStats()
    matching = maximal_matching(g)
    if matching.size >= ell:
        deletion = DeletionSet(frozenset(range(g.edge_count)) - matching.edges)
        return SolveResult(CD, "ell", ell, True, matching.size, deletion, "matching",
                           g.edge_count, stats.stop())

    table = build_cd_table(g, matching.vertices(g))
    stats.nodes_explored = int(table.entries.size)
    if table.value < ell:
        logger.info("Best clustering has %d cluster edges, below %d.", table.value, ell)
        return SolveResult(CD, "ell", ell, False, None, None, "cover-dp", g.edge_count, stats.stop())
    clusters = [
        (members | {vertex}) if vertex is not None else members
        for vertex, members in table.picks()
    ]
    deletion = deletion_set_from_partition(g, clusters)
    logger.info("Clustering found with %d cluster edges (target %d).", table.value, ell)
    return SolveResult(CD, "ell", ell, True, g.edge_count - deletion.size, deletion, "cover-dp",
                       g.edge_count, stats.stop())


def solve_stc_ell(g, ell):
    """
    Decides whether ``g`` has an STC-labeling with at least ``ell`` strong edges.

    After the matching test, the best labeling of ``G[C]`` alone is checked;
    then the valid partial labelings are tried by increasing size and each
    one runs the table. Sizes too small to reach ``ell`` even if every cover
    vertex gained a strong edge to ``I`` are skipped.

    Args:
        g (Graph): Input graph.
        ell (int): Strong-edge target, ``>= 0``.

    Returns:
        SolveResult: ``objective`` is the number of strong edges of the
        certificate (a Labeling).

    Raises:
        ParameterTooLargeError: If the cover exceeds ``MAX_COVER_VERTICES``.
    """
    if ell < 0:
        raise ValueError("ell must be non-negative")
    stats = SolveStats()
    matching = maximal_matching(g)
    if matching.size >= ell:
        labeling = Labeling.from_strong(g, matching.edges)
        return SolveResult(STC, "ell", ell, True, matching.size, labeling, "matching",
                           g.edge_count, stats.stop())

    context = CoverContext(g, matching.vertices(g))
    cover_graph, vertex_map = g.induced_subgraph(context.cover)
    solver = VertexCoverSolver(gallai_graph(cover_graph))
    weak_inside = solver.minimum_cover(cover_graph.edge_count)
    stats.nodes_explored += solver.nodes_explored
    best_inside = cover_graph.edge_count - len(weak_inside)
    if best_inside >= ell:
        strong = {
            g.edge_index(vertex_map[u], vertex_map[v])
            for index, (u, v) in enumerate(cover_graph.edges)
            if index not in weak_inside
        }
        labeling = Labeling.from_strong(g, strong)
        return SolveResult(STC, "ell", ell, True, labeling.strong_count, labeling, "cover-dp",
                           g.edge_count, stats.stop())

    reach = min(len(context.cover), sum(popcount(m) for m in context.neighbor_masks.values()))
    for size in range(max(0, ell - reach), best_inside + 1):
        for partial in partial_labelings(g, context.cover, size):
            table = build_stc_table(g, context, partial)
            stats.nodes_explored += 1
            if table.value < ell:
                continue
            strong = set(partial.strong_in_cover)
            for vertex, members in table.picks():
                strong.update(g.edge_index(vertex, c) for c in members)
            labeling = Labeling.from_strong(g, strong)
            logger.info("STC-labeling found with %d strong edges (target %d).",
                        labeling.strong_count, ell)
            return SolveResult(STC, "ell", ell, True, labeling.strong_count, labeling, "cover-dp",
                               g.edge_count, stats.stop())
    logger.info("No STC-labeling reaches %d strong edges.", ell)
    return SolveResult(STC, "ell", ell, False, None, None, "cover-dp", g.edge_count, stats.stop())
