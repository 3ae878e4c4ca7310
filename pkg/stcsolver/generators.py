"""
Instance factories: named graphs, hardness gadgets and random corpora.

The reduction builders return a ``ReductionArtifact`` whose vertex groups
name the gadget parts in construction order: original vertices first, then
gadget groups.

Classes:
    ReductionArtifact: Constructed graph, its budget and named vertex groups.

Functions:
    path_graph, cycle_graph, complete_graph, star_graph, petersen_graph,
    disjoint_union, fig3_graphs, expanded_graph, expanded_graph_budget,
    expanded_forward_labeling, clique_vc_to_rmc, find_clique,
    find_multicolored_clique, rmc_to_stc, rmc_forward_labeling,
    three_clique_cover_to_coclaw, iter_labeled_graphs, corpus, write_artifact.
"""

import json
import logging
from dataclasses import dataclass, field
from itertools import combinations, product
from math import comb
from pathlib import Path

import numpy as np

from stcsolver.errors import (
    InternalConsistencyError,
    ParameterTooLargeError,
    ReductionInputError,
    UnknownFamilyError,
    UnknownPatternError,
)
from stcsolver.graph_core import Graph
from stcsolver.instance_io import emit_instance
from stcsolver.labeling import Labeling
from stcsolver.special_cases import PATTERNS, find_coclaw, find_induced

logger = logging.getLogger(__name__)

FAMILIES = ("gnp", "hfree", "all-labeled")
LABELED_MAX_VERTICES = 7


def path_graph(n):
    return Graph.from_edge_list(n, [(v, v + 1) for v in range(n - 1)])


def cycle_graph(n):
    if n < 3:
        raise ValueError("a cycle needs at least 3 vertices")
    return Graph.from_edge_list(n, [(v, (v + 1) % n) for v in range(n)])


def complete_graph(n):
    return Graph.from_edge_list(n, combinations(range(n), 2))


def star_graph(leaves):
    """Vertex 0 joined to ``leaves`` pendant vertices."""
    return Graph.from_edge_list(leaves + 1, [(0, v) for v in range(1, leaves + 1)])


def petersen_graph():
    outer = [(v, (v + 1) % 5) for v in range(5)]
    spokes = [(v, v + 5) for v in range(5)]
    inner = [(5 + v, 5 + (v + 2) % 5) for v in range(5)]
    return Graph.from_edge_list(10, outer + spokes + inner)


def disjoint_union(*graphs):
    """Places the graphs side by side, renumbering each after the previous ones."""
    offset = 0
    edges = []
    for g in graphs:
        edges.extend((u + offset, v + offset) for u, v in g.edges)
        offset += g.vertex_count
    return Graph(offset, edges)


def fig3_graphs():
    """
    The two graphs on which no cluster labeling is an optimal STC-labeling.

    Returns:
        tuple: ``(a, b)``. ``a`` is a K4 on vertices 0..3 where outer vertex
        ``4 + i`` sees the triangle of the K4 that omits vertex ``i``
        (8 vertices, 18 edges, STC optimum 8, CD optimum 7). ``b`` is the
        complement of C7 (STC optimum 7, CD optimum 6).
    """
    core = list(combinations(range(4), 2))
    outer = [(c, 4 + i) for i in range(4) for c in range(4) if c != i]
    return Graph.from_edge_list(8, core + outer), cycle_graph(7).complement()


@dataclass(frozen=True)
class ReductionArtifact:
    """
    Output of a reduction builder.

    Attributes:
        graph (Graph): Constructed graph.
        budget (int | None): Weak/deletion budget ``k`` of the target instance.
        ell (int | None): Strong/cluster target ``m - k``.
        groups (dict): Group name to tuple of vertices; the groups partition V.
        parameters (dict): Construction parameters such as ``t`` or ``padding``.
        faithful (bool): False when a reduced padding breaks the equivalence.
    """

    graph: Graph
    budget: object
    ell: object
    groups: dict
    parameters: dict = field(default_factory=dict)
    faithful: bool = True

    def classes(self):
        """Colour classes ``C_1 .. C_t`` in order."""
        t = self.parameters["t"]
        return [self.groups[f"C_{r}"] for r in range(1, t + 1)]

    def metadata(self):
        return {
            "groups": {name: [v + 1 for v in members] for name, members in self.groups.items()},
            "budget": self.budget,
            "ell": self.ell,
            "parameters": self.parameters,
            "faithful": self.faithful,
        }


def expanded_graph(g, padding=None):
    """
    Adds a clique of ``padding`` vertices adjacent to every original vertex.

    With the default ``padding = n**3``, ``g`` has a clique of size ``t`` iff
    the result has an STC-labeling (or a cluster subgraph) with at least
    ``C(padding, 2) + t * padding`` strong edges. Smaller paddings only
    exercise the construction and are marked non-faithful.

    Args:
        g (Graph): Input graph.
        padding (int, optional): Size of the added clique.

    Returns:
        ReductionArtifact: ``budget``/``ell`` are None; use
        ``expanded_graph_budget`` for a clique target.
    """
    n = g.vertex_count
    faithful_padding = n ** 3
    padding = faithful_padding if padding is None else padding
    if padding < 1:
        raise ValueError("padding must be at least 1")
    added = range(n, n + padding)
    edges = list(g.edges)
    edges.extend(combinations(added, 2))
    edges.extend((v, w) for v in range(n) for w in added)
    graph = Graph.from_edge_list(n + padding, edges)
    logger.debug("Expanded graph has %d vertices and %d edges.", graph.vertex_count, graph.edge_count)
    return ReductionArtifact(
        graph,
        None,
        None,
        {"original": tuple(range(n)), "padding": tuple(added)},
        {"padding": padding},
        padding == faithful_padding,
    )


def expanded_graph_budget(artifact, t):
    """Weak budget ``m - (C(p, 2) + t * p)`` for clique target ``t``."""
    p = artifact.parameters["padding"]
    return artifact.graph.edge_count - (comb(p, 2) + t * p)


def expanded_forward_labeling(artifact, clique):
    """
    Labeling with ``C(p, 2) + t * p`` strong edges built from a ``t``-clique.

    Strong edges are the padding clique and every edge from the clique to
    the padding.

    Raises:
        ReductionInputError: If ``clique`` is not a clique of the original graph.
    """
    g = artifact.graph
    original = set(artifact.groups["original"])
    clique = tuple(clique)
    if not set(clique) <= original or not g.is_clique(clique):
        raise ReductionInputError("not a clique of the original graph", clique)
    padding = artifact.groups["padding"]
    strong = [g.edge_index(u, v) for u, v in combinations(padding, 2)]
    strong.extend(g.edge_index(v, w) for v in clique for w in padding)
    return Labeling.from_strong(g, strong)


def clique_vc_to_rmc(g, cover, t):
    """
    Builds a restricted multicolored clique instance from a clique instance.

    Every cover vertex gets ``t`` copies, one per colour class; the vertices
    outside the cover join class ``C_t``. Copies of adjacent cover vertices
    are joined across different classes, and every copy in ``C_1 .. C_{t-1}``
    of a cover vertex is joined to its neighbours outside the cover.

    Args:
        g (Graph): Clique instance.
        cover: Vertex cover of ``g``.
        t (int): Clique size, ``1 <= t <= |cover| + 1``.

    Returns:
        ReductionArtifact: Groups ``C_1 .. C_t``; ``parameters`` hold ``t``,
        ``s`` and the source vertex of every constructed vertex.

    Raises:
        ReductionInputError: If ``cover`` misses an edge or ``t`` is out of range.
    """
    cover = sorted(set(cover))
    in_cover = set(cover)
    for u, v in g.edges:
        if u not in in_cover and v not in in_cover:
            raise ReductionInputError("cover misses an edge", (u, v))
    s = len(cover)
    if not 1 <= t <= s + 1:
        raise ReductionInputError(f"clique size t={t} must lie in [1, {s + 1}]")
    independent = [v for v in g.vertices() if v not in in_cover]

    copy_of = {}
    source = []
    classes = []
    for r in range(t):
        members = []
        for v in cover:
            copy_of[v, r] = len(source)
            members.append(len(source))
            source.append(v)
        classes.append(members)
    for w in independent:
        copy_of[w, t - 1] = len(source)
        classes[-1].append(len(source))
        source.append(w)

    edges = []
    for u, v in g.edges:
        if u in in_cover and v in in_cover:
            edges.extend(
                (copy_of[u, r], copy_of[v, q]) for r in range(t) for q in range(t) if r != q
            )
        else:
            a, w = (u, v) if u in in_cover else (v, u)
            edges.extend((copy_of[a, r], copy_of[w, t - 1]) for r in range(t - 1))
    graph = Graph.from_edge_list(len(source), edges)
    groups = {f"C_{r + 1}": tuple(members) for r, members in enumerate(classes)}
    return ReductionArtifact(graph, None, None, groups, {"t": t, "s": s, "source": source})


def find_clique(g, t):
    """Lexicographically first ``t``-clique of ``g`` or None."""
    for candidate in combinations(g.vertices(), t):
        if g.is_clique(candidate):
            return candidate
    return None


def find_multicolored_clique(g, classes):
    """First clique with one vertex per class, by exhaustive search, or None."""

    def extend(chosen, depth):
        if depth == len(classes):
            return tuple(chosen)
        for v in classes[depth]:
            if all(g.has_edge(u, v) for u in chosen):
                found = extend(chosen + [v], depth + 1)
                if found is not None:
                    return found
        return None

    return extend([], 0)


def _check_coloring(g, classes):
    members = [v for cls in classes for v in cls]
    if sorted(members) != list(g.vertices()):
        raise ReductionInputError("colour classes must partition the vertices")
    colour = {v: r for r, cls in enumerate(classes) for v in cls}
    for u, v in g.edges:
        if colour[u] == colour[v]:
            raise ReductionInputError("colouring is not proper", (u, v))
    sizes = {len(cls) for cls in classes[:-1]}
    if len(sizes) > 1:
        raise ReductionInputError("classes C_1 .. C_{t-1} differ in size",
                                  tuple(len(cls) for cls in classes[:-1]))


def rmc_to_stc(g, classes):
    """
    Builds an STC instance from a restricted multicolored clique instance.

    Each of the first ``t - 1`` classes receives ``z - 1`` attached cliques of
    size ``t``, each joined to the whole class. The target is
    ``ell = C(t, 2) + (t - 1)(z - 1) C(t + 1, 2)`` and ``k = m - ell``.

    Args:
        g (Graph): Properly coloured graph.
        classes (list): Colour classes ``C_1 .. C_t``; the first ``t - 1``
            share one size ``z``.

    Returns:
        ReductionArtifact: Groups ``C_r`` and ``K_i_r`` (attached clique
        ``i`` of class ``r``, both 1-indexed).

    Raises:
        ReductionInputError: On an improper colouring or unequal class sizes.
    """
    classes = [tuple(cls) for cls in classes]
    if not classes:
        raise ReductionInputError("at least one colour class is required")
    _check_coloring(g, classes)
    t = len(classes)
    z = len(classes[0]) if t > 1 else 0
    edges = list(g.edges)
    groups = {f"C_{r + 1}": cls for r, cls in enumerate(classes)}
    next_vertex = g.vertex_count
    for r in range(t - 1):
        for i in range(z - 1):
            attached = tuple(range(next_vertex, next_vertex + t))
            next_vertex += t
            edges.extend(combinations(attached, 2))
            edges.extend((v, u) for v in classes[r] for u in attached)
            groups[f"K_{i + 1}_{r + 1}"] = attached
    graph = Graph.from_edge_list(next_vertex, edges)
    ell = comb(t, 2) + (t - 1) * max(z - 1, 0) * comb(t + 1, 2)
    logger.debug("Restricted multicolored clique gadget: t=%d, z=%d, ell=%d.", t, z, ell)
    return ReductionArtifact(graph, graph.edge_count - ell, ell, groups, {"t": t, "z": z})


def rmc_forward_labeling(artifact, clique):
    """
    Labeling with exactly ``ell`` strong edges from a multicolored clique.

    Strong edges are the clique's edges, the attached cliques' edges, and for
    every class the edges joining its ``i``-th vertex outside the clique to
    the ``i``-th attached clique.

    Raises:
        ReductionInputError: If ``clique`` is not a multicolored clique.
    """
    g = artifact.graph
    t = artifact.parameters["t"]
    classes = artifact.classes()
    clique = tuple(clique)
    colours = [next((r for r, cls in enumerate(classes) if v in cls), None) for v in clique]
    if sorted(c for c in colours if c is not None) != list(range(t)) or not g.is_clique(clique):
        raise ReductionInputError("not a multicolored clique", clique)
    strong = [g.edge_index(u, v) for u, v in combinations(sorted(clique), 2)]
    chosen = set(clique)
    for r in range(t - 1):
        outside = [v for v in classes[r] if v not in chosen]
        for i, v in enumerate(outside):
            attached = artifact.groups[f"K_{i + 1}_{r + 1}"]
            strong.extend(g.edge_index(a, b) for a, b in combinations(attached, 2))
            strong.extend(g.edge_index(v, a) for a in attached)
    return Labeling.from_strong(g, strong)


def three_clique_cover_to_coclaw(g, padding=None):
    """
    Builds a co-claw-free STC/CD instance from a 3-clique-cover instance.

    Three cliques ``K_1, K_2, K_3`` of ``padding`` vertices each are added,
    every added vertex is joined to all of V, and ``v_{c,i}`` is joined to
    ``v_{d,j}`` whenever ``c != d``. The budget is
    ``k = m' - (3 C(p, 2) + p n)``.

    Args:
        g (Graph): Input graph, expected co-claw-free.
        padding (int, optional): Size ``p`` of each added clique, ``n**3`` by default.

    Returns:
        ReductionArtifact: Groups ``original``, ``K_1``, ``K_2``, ``K_3``.

    Raises:
        InternalConsistencyError: If a co-claw-free input yields an output
            with a co-claw.
    """
    n = g.vertex_count
    faithful_padding = n ** 3
    p = faithful_padding if padding is None else padding
    if p < 1:
        raise ValueError("padding must be at least 1")
    added = [(n + i * p + c, c) for i in range(3) for c in range(p)]
    edges = list(g.edges)
    edges.extend((x, y) for (x, c), (y, d) in combinations(added, 2) if c != d)
    edges.extend((v, x) for v in range(n) for x, _ in added)
    graph = Graph.from_edge_list(n + 3 * p, edges)
    ell = 3 * comb(p, 2) + p * n
    witness = find_coclaw(graph)
    if witness is not None:
        if find_coclaw(g) is None:
            raise InternalConsistencyError(f"co-claw {witness} in the output of a co-claw-free input")
        logger.warning("Input contains a co-claw, so the output does too: %s", witness)
    groups = {"original": tuple(range(n))}
    groups.update({f"K_{i + 1}": tuple(range(n + i * p, n + (i + 1) * p)) for i in range(3)})
    return ReductionArtifact(
        graph, graph.edge_count - ell, ell, groups,
        {"padding": p, "coclaw_free": witness is None}, p == faithful_padding,
    )


def iter_labeled_graphs(n):
    """Yields all ``2**C(n, 2)`` labeled graphs on ``n`` vertices."""
    if n > LABELED_MAX_VERTICES:
        raise ParameterTooLargeError(f"labeled enumeration is limited to n <= {LABELED_MAX_VERTICES}")
    pairs = list(combinations(range(n), 2))
    for mask in range(1 << len(pairs)):
        yield Graph(n, [pair for bit, pair in enumerate(pairs) if (mask >> bit) & 1])


def _gnp(n, p, seed):
    rng = np.random.default_rng(seed)
    pairs = list(combinations(range(n), 2))
    draws = rng.random(len(pairs))
    return Graph(n, [pair for pair, draw in zip(pairs, draws) if draw < p])


def _break_witnesses(g, pattern, seed):
    """Toggles pairs inside pattern witnesses until ``g`` is free of the pattern."""
    rng = np.random.default_rng(seed)
    remove = PATTERNS[pattern].edge_count > 0
    edges = set(g.edges)
    while True:
        current = Graph(g.vertex_count, sorted(edges))
        witness = find_induced(current, pattern)
        if witness is None:
            return current
        if remove:
            candidates = [pair for pair in combinations(witness, 2) if pair in edges]
            edges.discard(candidates[rng.integers(len(candidates))])
        else:
            candidates = list(combinations(witness, 2))
            edges.add(candidates[rng.integers(len(candidates))])


def corpus(seed, family, **params):
    """
    Deterministic list of graphs from a named family.

    Families:
        ``gnp``: ``n``, ``p``, ``count``; graph ``i`` uses seed ``seed + i``.
        ``hfree``: ``pattern``, ``n``, ``count``, optional ``p`` (0.5); G(n, p)
            samples made free of the pattern by toggling witness pairs.
        ``all-labeled``: ``n``; every labeled graph, ``n <= 7``.

    Raises:
        UnknownFamilyError: For a family outside ``FAMILIES``.
    """
    if family == "gnp":
        n, p, count = params["n"], params["p"], params.get("count", 1)
        return [_gnp(n, p, seed + index) for index in range(count)]
    if family == "hfree":
        pattern, n = params["pattern"], params["n"]
        p, count = params.get("p", 0.5), params.get("count", 1)
        if pattern not in PATTERNS:
            raise UnknownPatternError(f"unknown pattern {pattern!r}")
        return [
            _break_witnesses(_gnp(n, p, seed + index), pattern, seed + index)
            for index in range(count)
        ]
    if family == "all-labeled":
        return list(iter_labeled_graphs(params["n"]))
    raise UnknownFamilyError(f"unknown corpus family {family!r}; expected one of {FAMILIES}")


def write_artifact(artifact, path, problem="stc"):
    """
    Writes the instance file and a JSON sidecar with groups and budgets.

    Returns:
        tuple: Paths of the instance file and of the sidecar.
    """
    path = Path(path)
    path.write_text(emit_instance(artifact.graph, problem))
    sidecar = path.with_suffix(".json")
    sidecar.write_text(json.dumps(artifact.metadata(), indent=2))
    logger.info("Wrote %s and %s.", path, sidecar)
    return path, sidecar
