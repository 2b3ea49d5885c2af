from hypothesis import strategies as st

from hermspec.graph import MixedGraph


@st.composite
def mixed_graphs(draw, min_n=0, max_n=7):
    n = draw(st.integers(min_n, max_n))
    und, arcs = [], []
    for u in range(n):
        for v in range(u + 1, n):
            s = draw(st.integers(0, 3))
            if s == 1:
                und.append((u, v))
            elif s == 2:
                arcs.append((u, v))
            elif s == 3:
                arcs.append((v, u))
    return MixedGraph.from_edges(n, und, arcs)


@st.composite
def gauges(draw, n):
    return tuple(draw(st.lists(st.integers(0, 3), min_size=n, max_size=n)))
