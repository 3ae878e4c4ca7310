from itertools import combinations

from hypothesis import given, settings

from stcsolver.generators import complete_graph, disjoint_union, star_graph
from stcsolver.graph_core import Graph
from stcsolver.kernels import (
    critical_cliques,
    kernel_size_bound_check,
    kernelize_k,
    partition_bounds,
    rule1_apply_once,
    rule2_apply,
)
from stcsolver.oracle import brute_stc_optimum
from strategies import graphs


def test_critical_cliques_of_the_pendant_triangle(rule1_demo):
    decomposition = critical_cliques(rule1_demo)
    assert decomposition.cliques == (frozenset({0, 1}), frozenset({2}), frozenset({3}))
    assert decomposition.closed_flags == (True, False, True)
    assert decomposition.cc_adjacency == (frozenset({1}), frozenset({0, 2}), frozenset({1}))
    assert decomposition.clique_of == (0, 0, 1, 2)
    assert decomposition.boundary_edges(0) == [(2, 3)]


@settings(max_examples=80, deadline=None)
@given(graphs(max_n=7))
def test_critical_cliques_partition_the_vertices_by_closed_neighborhood(g):
    decomposition = critical_cliques(g)
    cliques = decomposition.cliques
    assert sorted(v for clique in cliques for v in clique) == list(g.vertices())
    assert [min(clique) for clique in cliques] == sorted(min(clique) for clique in cliques)
    closed = [g.neighbors(v) | {v} for v in g.vertices()]
    for index, clique in enumerate(cliques):
        assert g.is_clique(clique)
        assert all(decomposition.clique_of[v] == index for v in clique)
        assert len({closed[v] for v in clique}) == 1
        neighborhood = decomposition.neighborhood(index)
        assert decomposition.closed_flags[index] == g.is_clique(neighborhood)
        for other in decomposition.cc_adjacency[index]:
            assert all(g.has_edge(u, w) for u in clique for w in cliques[other])
    for first, second in combinations(range(len(cliques)), 2):
        u, w = min(cliques[first]), min(cliques[second])
        # maximal: two cliques never share a closed neighborhood
        assert closed[u] != closed[w]
        adjacent = second in decomposition.cc_adjacency[first]
        assert adjacent == any(g.has_edge(a, b) for a in cliques[first] for b in cliques[second])


def test_rule1_removes_the_triangle_and_spends_one_weak_edge(rule1_demo):
    reduced = rule1_apply_once(rule1_demo, 1)
    assert reduced.budget == 0
    assert reduced.vertex_map == (3,)
    assert reduced.graph == Graph(1, [])
    assert reduced.verdict is None
    (entry,) = reduced.trace
    assert entry.removed == (0, 1, 2)
    assert entry.budget_delta == 1
    assert entry.boundary_edges == ((2, 3),)
    assert entry.to_dict(one_indexed=True) == {"rule": "rule1", "removed": [1, 2, 3], "budget_delta": 1}


def test_rule1_with_no_budget_says_no(rule1_demo):
    reduced = rule1_apply_once(rule1_demo, 0)
    assert reduced.verdict == "no"
    assert reduced.budget == -1


def test_exhaustive_rule1_also_drops_isolated_vertices(rule1_demo):
    reduced = kernelize_k(rule1_demo, 1)
    assert reduced.graph.vertex_count == 0
    assert reduced.budget == 0
    assert reduced.verdict is None
    assert [entry.removed for entry in reduced.trace] == [(0, 1, 2), (3,)]


def test_rule1_does_not_apply_to_c4(c4):
    assert rule1_apply_once(c4, 2) is None
    assert kernelize_k(c4, 1).graph == c4
    assert kernelize_k(c4, 1).verdict is None


def test_four_k_bound_rejects_small_budgets(c4, p3):
    reduced = kernelize_k(c4, 0)
    assert reduced.verdict == "no"
    assert "4k" in reduced.reason
    assert kernelize_k(p3, 0).verdict == "no"


def test_cliques_vanish_at_zero_budget(k4):
    reduced = kernelize_k(k4, 0)
    assert reduced.graph.vertex_count == 0
    assert reduced.verdict is None

    triangles = disjoint_union(*(complete_graph(3) for _ in range(10)))
    reduced = kernelize_k(triangles, 0)
    assert reduced.graph.vertex_count == 0
    assert len(reduced.trace) == 10


def test_rule2_short_circuits_when_the_matching_is_large_enough(star3):
    reduced = rule2_apply(star3, 1)
    assert reduced.verdict == "yes"
    assert reduced.trace[0].rule == "matching-short-circuit"


def test_rule2_trims_a_star_to_a_p3(star3):
    reduced = rule2_apply(star3, 2)
    assert reduced.verdict is None
    assert reduced.budget == 2
    assert reduced.graph == star_graph(2)
    assert len(reduced.partition["V_M"]) == 2
    assert reduced.partition["I_2"] == ()
    assert len(reduced.partition["I_1"]) == 1
    assert all(holds for _, _, holds in partition_bounds(reduced, 2).values())


def test_rule2_leaves_a_triangle_alone(k3):
    reduced = rule2_apply(k3, 2)
    assert reduced.graph == k3
    assert reduced.trace == ()
    assert len(reduced.partition["I_2"]) == 1


def test_rule2_on_a_large_star():
    reduced = rule2_apply(star_graph(9), 2)
    assert reduced.graph == star_graph(2)
    (entry,) = reduced.trace
    assert len(entry.removed) == 7
    assert kernel_size_bound_check(reduced, 2)


@settings(max_examples=50, deadline=None)
@given(graphs(max_n=6))
def test_rule1_kernel_keeps_the_answer(g):
    strong_opt, _ = brute_stc_optimum(g)
    weak_opt = g.edge_count - strong_opt
    for k in range(g.edge_count + 1):
        reduced = kernelize_k(g, k)
        if reduced.verdict == "no":
            assert weak_opt > k
            continue
        reduced_strong, _ = brute_stc_optimum(reduced.graph)
        reduced_weak = reduced.graph.edge_count - reduced_strong
        assert (reduced_weak <= reduced.budget) == (weak_opt <= k)
        assert reduced.graph.vertex_count <= 4 * reduced.budget


@settings(max_examples=50, deadline=None)
@given(graphs(max_n=6))
def test_rule2_kernel_keeps_the_answer(g):
    strong_opt, _ = brute_stc_optimum(g)
    for ell in range(g.edge_count + 1):
        reduced = rule2_apply(g, ell)
        if reduced.verdict == "yes":
            assert strong_opt >= ell
            continue
        reduced_strong, _ = brute_stc_optimum(reduced.graph)
        assert (reduced_strong >= ell) == (strong_opt >= ell)
        assert all(holds for _, _, holds in partition_bounds(reduced, ell).values())
