"""Hypothesis strategies shared by the test modules."""

from hypothesis import strategies as st

from stcsolver.graph_core import Graph


@st.composite
def graphs(draw, min_n=0, max_n=6):
    """Random simple graphs on at most ``max_n`` vertices."""
    n = draw(st.integers(min_value=min_n, max_value=max_n))
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    chosen = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    return Graph(n, [pair for pair, keep in zip(pairs, chosen) if keep])
