import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from stcsolver.errors import ClusterWitnessError, LabelingContractError
from stcsolver.generators import complete_graph, disjoint_union, path_graph
from stcsolver.graph_core import Graph
from stcsolver.labeling import (
    DeletionSet,
    Labeling,
    check_partition,
    cluster_labeling,
    cut_edges,
    deletion_set_from_partition,
    drop_weak_cut,
    find_stc_violations,
    is_cluster_graph,
    is_stc_labeling,
    is_weak_cut,
)
from stcsolver.oracle import brute_stc_optimum
from strategies import graphs


def test_both_edges_of_a_p3_strong_is_a_violation(p3):
    labeling = Labeling.from_strong(p3, [0, 1])
    assert not is_stc_labeling(p3, labeling)
    assert find_stc_violations(p3, labeling) == [(0, 1)]


def test_all_weak_is_always_valid(c5):
    assert is_stc_labeling(c5, Labeling.from_weak(c5, range(c5.edge_count)))


def test_perfect_matching_of_c4_is_valid(c4):
    assert is_stc_labeling(c4, Labeling.from_strong(c4, [0, 2]))


def test_find_all_reports_every_violation(c4):
    labeling = Labeling.from_strong(c4, range(4))
    assert find_stc_violations(c4, labeling) == [(0, 1)]
    assert find_stc_violations(c4, labeling, find_all=True) == [(0, 1), (0, 3), (1, 2), (2, 3)]


def test_malformed_partition_is_rejected(p3):
    with pytest.raises(LabelingContractError):
        check_partition(p3, Labeling(frozenset({0}), frozenset({0, 1})))
    with pytest.raises(LabelingContractError):
        is_stc_labeling(p3, Labeling(frozenset({0}), frozenset()))


def test_cluster_graph_recognition(p3, paw):
    assert is_cluster_graph(disjoint_union(complete_graph(3), complete_graph(2)))
    assert not is_cluster_graph(p3)
    assert not is_cluster_graph(paw)


def test_cluster_labeling_of_p3(p3):
    labeling = cluster_labeling(p3, DeletionSet(frozenset({0})))
    assert labeling.strong == frozenset({1})
    assert labeling.weak == frozenset({0})


def test_cluster_labeling_of_c4(c4):
    labeling = cluster_labeling(c4, DeletionSet(frozenset({0, 2})))
    assert labeling.strong_count == 2


def test_cluster_labeling_reports_a_witness(c4):
    with pytest.raises(ClusterWitnessError) as info:
        cluster_labeling(c4, DeletionSet(frozenset({0})))
    u, center, w = info.value.witness
    assert c4.has_edge(u, center) and c4.has_edge(center, w) and not c4.has_edge(u, w)
    assert 0 not in info.value.edges


def test_deletion_set_from_partition(c4):
    assert deletion_set_from_partition(c4, [{0, 1}, {2, 3}]).deleted == frozenset({1, 3})
    with pytest.raises(ValueError):
        deletion_set_from_partition(c4, [{0, 2}, {1, 3}])


def test_cut_edges_and_weak_cuts():
    g = disjoint_union(complete_graph(3), complete_graph(3))
    bridge = g.edge_count
    g = Graph.from_edge_list(6, list(g.edges) + [(2, 3)])
    assert cut_edges(g, {0, 1, 2}) == frozenset({bridge})
    labeling = Labeling.from_weak(g, [bridge])
    assert is_weak_cut(g, labeling, {0, 1, 2})
    reduced, restricted = drop_weak_cut(g, labeling, {0, 1, 2})
    assert reduced.edge_count == 6
    assert restricted.strong_count == labeling.strong_count
    assert is_stc_labeling(reduced, restricted)
    assert brute_stc_optimum(reduced)[0] == brute_stc_optimum(g)[0] == 6


def test_drop_weak_cut_rejects_strong_crossing_edges():
    g = path_graph(3)
    with pytest.raises(ValueError):
        drop_weak_cut(g, Labeling.from_strong(g, [0]), {0})


@settings(max_examples=40, deadline=None)
@given(graphs(max_n=6), st.data())
def test_dropping_a_weak_cut_keeps_optimal_labelings_valid(g, data):
    _, labeling = brute_stc_optimum(g)
    side = data.draw(st.sets(st.sampled_from(range(g.vertex_count)))) if g.vertex_count else set()
    if not is_weak_cut(g, labeling, side):
        return
    reduced, restricted = drop_weak_cut(g, labeling, side)
    assert is_stc_labeling(reduced, restricted)
    assert restricted.strong_count == labeling.strong_count
    assert brute_stc_optimum(reduced)[0] == brute_stc_optimum(g)[0]
