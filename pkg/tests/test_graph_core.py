from itertools import combinations

import pytest
from hypothesis import given, settings

from stcsolver.errors import GraphInputError
from stcsolver.generators import complete_graph, cycle_graph, petersen_graph
from stcsolver.graph_core import Graph, iter_bits, popcount, to_mask
from stcsolver.matching import maximal_matching, maximum_matching
from strategies import graphs


def test_from_edge_list_builds_p3_and_k3():
    p3 = Graph.from_edge_list(3, [(0, 1), (1, 2)])
    k3 = Graph.from_edge_list(3, [(0, 1), (1, 2), (0, 2)])
    assert p3.edge_count == 2
    assert k3.edge_count == 3
    assert k3.is_clique(range(3))


def test_edges_are_canonical_and_keep_input_order():
    g = Graph.from_edge_list(3, [(2, 1), (1, 0)])
    assert g.edges == ((1, 2), (0, 1))
    assert g.edge_index(0, 1) == 1
    assert g.edge_index(2, 1) == 0


@pytest.mark.parametrize(
    "pairs, reason",
    [
        ([(0, 1), (0, 1)], "duplicate edge"),
        ([(0, 1), (1, 0)], "duplicate edge"),
        ([(1, 1)], "self-loop"),
        ([(0, 3)], "vertex out of range"),
    ],
)
def test_invalid_edge_lists_name_the_pair(pairs, reason):
    with pytest.raises(GraphInputError) as info:
        Graph.from_edge_list(3, pairs)
    assert info.value.reason == reason
    assert info.value.pair == pairs[-1]


def test_edge_index_of_missing_edge_raises(p3):
    with pytest.raises(KeyError):
        p3.edge_index(0, 2)


def test_bit_helpers():
    mask = to_mask([0, 3, 5])
    assert mask == 0b101001
    assert list(iter_bits(mask)) == [0, 3, 5]
    assert popcount(mask) == 3


def test_enumerate_p3_small_graphs(k3, p3, c4):
    assert k3.enumerate_p3() == []
    assert p3.enumerate_p3() == [(0, 1)]
    # C4 edges 01, 12, 23, 03: each edge conflicts with both of its neighbours.
    assert c4.enumerate_p3() == [(0, 1), (0, 3), (1, 2), (2, 3)]


def test_p3_vertices(p3):
    assert p3.p3_vertices(0, 1) == (0, 1, 2)


@settings(max_examples=60, deadline=None)
@given(graphs(max_n=7))
def test_enumerate_p3_matches_triple_scan(g):
    expected = set()
    for triple in combinations(g.vertices(), 3):
        for center in triple:
            u, w = (x for x in triple if x != center)
            if g.has_edge(u, center) and g.has_edge(center, w) and not g.has_edge(u, w):
                pair = sorted((g.edge_index(u, center), g.edge_index(center, w)))
                expected.add(tuple(pair))
    found = g.enumerate_p3()
    assert len(found) == len(set(found))
    assert set(found) == expected


def test_induced_subgraph(k3, c4, paw):
    sub, vertex_map = k3.induced_subgraph({0, 1})
    assert sub == complete_graph(2)
    assert vertex_map == (0, 1)
    assert c4.induced_subgraph(c4.vertices())[0] == c4
    triangle, vertex_map = paw.induced_subgraph(0b0111)
    assert triangle == complete_graph(3)
    assert vertex_map == (0, 1, 2)


def test_remove_vertices_and_without_edges(paw):
    reduced, vertex_map = paw.remove_vertices([0])
    assert vertex_map == (1, 2, 3)
    assert reduced.edges == ((0, 1),)
    assert paw.without_edges([3]).edge_count == 3
    assert paw.without_edges([3]).vertex_count == 4


def test_cliques_complements_and_components(k4, two_k2):
    assert k4.is_clique(k4.vertices())
    assert not cycle_graph(4).is_clique(range(4))
    assert cycle_graph(7).complement().vertex_count == 7
    assert cycle_graph(7).complement().edge_count == 14
    assert two_k2.connected_components() == [frozenset({0, 1}), frozenset({2, 3})]


def test_graph_equality_ignores_edge_order():
    assert Graph.from_edge_list(3, [(0, 1), (1, 2)]) == Graph.from_edge_list(3, [(2, 1), (0, 1)])
    assert Graph(3, []) != Graph(4, [])


def test_maximal_matching_is_greedy_in_index_order(p3, c4):
    assert maximal_matching(p3).size == 1
    assert maximal_matching(Graph(0, [])).size == 0
    assert maximal_matching(c4).edges == frozenset({0, 2})


def test_maximum_matching_sizes(c4, k3):
    assert maximum_matching(c4).size == 2
    assert maximum_matching(k3).size == 1
    assert maximum_matching(petersen_graph()).size == 5
    assert maximum_matching(Graph(5, [])).size == 0


def test_maximum_matching_beats_greedy_on_path():
    # Greedy takes the middle edge first; the blossom search augments to 2.
    g = Graph.from_edge_list(4, [(1, 2), (0, 1), (2, 3)])
    assert maximal_matching(g).size == 1
    assert maximum_matching(g).size == 2


def _largest_matching(edges, used=frozenset()):
    if not edges:
        return 0
    (u, v), rest = edges[0], edges[1:]
    best = _largest_matching(rest, used)
    if u not in used and v not in used:
        best = max(best, 1 + _largest_matching(rest, used | {u, v}))
    return best


@settings(max_examples=80, deadline=None)
@given(graphs(max_n=7))
def test_maximum_matching_is_as_large_as_any_matching(g):
    matching = maximum_matching(g)
    assert matching.is_valid(g)
    assert matching.kind == "maximum"
    assert matching.size == _largest_matching(list(g.edges))


@settings(max_examples=60, deadline=None)
@given(graphs(max_n=7))
def test_complement_and_components_follow_their_definitions(g):
    complement = g.complement()
    assert list(complement.edges) == sorted(complement.edges)
    for u, v in combinations(g.vertices(), 2):
        assert complement.has_edge(u, v) != g.has_edge(u, v)
    components = g.connected_components()
    assert sorted(v for part in components for v in part) == list(g.vertices())
    assert [min(part) for part in components] == sorted(min(part) for part in components)
    for part in components:
        assert all(w in part for v in part for w in g.neighbors(v))


def test_components_within_a_vertex_subset(p4):
    assert p4.connected_components(within=[0, 1, 3]) == [frozenset({0, 1}), frozenset({3})]
    assert p4.connected_components(within=[]) == []
