import pytest
from hypothesis import given, settings

from stcsolver.cluster_deletion import ClusterDeletionBrancher, solve_cd_k
from stcsolver.generators import complete_graph, disjoint_union
from stcsolver.labeling import cluster_labeling, is_stc_labeling
from stcsolver.oracle import brute_cd_optimum
from stcsolver.results import minimize_budget
from strategies import graphs


def test_clusters_need_no_deletion(k3):
    result = solve_cd_k(k3, 0)
    assert result.feasible
    assert result.objective == 0
    assert result.solver == "p3-branching"

    g = disjoint_union(complete_graph(3), complete_graph(2))
    brancher = ClusterDeletionBrancher(g)
    assert brancher.minimum_deletion(0).size == 0
    assert brancher.rules_fired == 2


def test_c4_needs_two_deletions(c4):
    assert not solve_cd_k(c4, 1).feasible
    result = solve_cd_k(c4, 2)
    assert result.feasible
    assert result.weak_count == 2
    assert cluster_labeling(c4, result.certificate).strong_count == 2


def test_first_worked_example_needs_eleven_deletions(fig3a):
    assert not solve_cd_k(fig3a, 10).feasible
    result = solve_cd_k(fig3a, 11)
    assert result.feasible
    assert result.strong_count == 7


def test_negative_budget_is_rejected(p3):
    with pytest.raises(ValueError):
        solve_cd_k(p3, -1)


@settings(max_examples=60, deadline=None)
@given(graphs(max_n=6))
def test_minimum_deletion_matches_the_oracle(g):
    cluster_opt, _ = brute_cd_optimum(g)
    result = minimize_budget(solve_cd_k, g)
    assert g.edge_count - result.objective == cluster_opt
    labeling = cluster_labeling(g, result.certificate)
    assert is_stc_labeling(g, labeling)
