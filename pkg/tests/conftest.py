import pytest

from stcsolver.generators import (
    complete_graph,
    cycle_graph,
    disjoint_union,
    fig3_graphs,
    path_graph,
    star_graph,
)
from stcsolver.graph_core import Graph


@pytest.fixture
def p3():
    return path_graph(3)


@pytest.fixture
def p4():
    return path_graph(4)


@pytest.fixture
def k3():
    return complete_graph(3)


@pytest.fixture
def k4():
    return complete_graph(4)


@pytest.fixture
def c4():
    return cycle_graph(4)


@pytest.fixture
def c5():
    return cycle_graph(5)


@pytest.fixture
def paw():
    return Graph.from_edge_list(4, [(0, 1), (0, 2), (1, 2), (0, 3)])


@pytest.fixture
def star3():
    return star_graph(3)


@pytest.fixture
def two_k2():
    return disjoint_union(complete_graph(2), complete_graph(2))


@pytest.fixture
def rule1_demo():
    """Triangle a-b-c with pendant d on c; a=0, b=1, c=2, d=3."""
    return Graph.from_edge_list(4, [(0, 1), (0, 2), (1, 2), (2, 3)])


@pytest.fixture
def fig3a():
    return fig3_graphs()[0]


@pytest.fixture
def fig3b():
    return fig3_graphs()[1]
