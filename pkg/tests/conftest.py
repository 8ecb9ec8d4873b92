import pytest

from polyrecon.graph import (
    Graph,
    complete_graph,
    cycle_graph,
    disjoint_union,
    empty_graph,
    path_graph,
    star_graph,
)

K3 = complete_graph(3)
P3 = path_graph(3)
P4 = path_graph(4)
C4 = cycle_graph(4)
C5 = cycle_graph(5)
K4 = complete_graph(4)
S4 = star_graph(4)
S6 = star_graph(6)
E4 = empty_graph(4)
TWO_K2 = disjoint_union(complete_graph(2), complete_graph(2))


def graph_strategy(min_n=1, max_n=7):
    """Hypothesis strategy for small labeled graphs."""
    from hypothesis import strategies as st

    @st.composite
    def build(draw):
        n = draw(st.integers(min_n, max_n))
        pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
        mask = draw(st.integers(0, (1 << len(pairs)) - 1))
        return Graph.from_edges(n, [p for k, p in enumerate(pairs) if mask >> k & 1])
    return build()


@pytest.fixture(scope="session")
def named():
    return {"K3": K3, "P3": P3, "P4": P4, "C4": C4, "C5": C5, "K4": K4, "S4": S4, "S6": S6,
            "E4": E4, "2K2": TWO_K2}
