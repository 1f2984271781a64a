from itertools import combinations

from hypothesis import strategies as st

from hyperturan.hypergraph import Hypergraph

SLOW_TESTS_ENV_VAR = "HYPERTURAN_SLOW_TESTS"


@st.composite
def hypergraphs(draw, k=3, min_n=3, max_n=7, max_edges=12):
    """Random k-uniform families on a small vertex set."""
    n = draw(st.integers(min_n, max_n))
    pool = list(combinations(range(n), k))
    edges = draw(st.lists(st.sampled_from(pool), unique=True, max_size=max_edges))
    return Hypergraph(k, n, edges)


@st.composite
def non_increasing(draw, max_len=8, max_value=12):
    values = draw(st.lists(st.integers(0, max_value), min_size=1, max_size=max_len))
    values = sorted(values, reverse=True)
    if values[0] == 0:
        values[0] = 1
    t = draw(st.integers(1, values[0]))
    return values, t
