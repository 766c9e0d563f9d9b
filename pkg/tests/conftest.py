from __future__ import annotations

import sys
from pathlib import Path

from hypothesis import settings
from hypothesis import strategies as st

sys.path.insert(0, str(Path(__file__).resolve().parent))

from kmetric.graph import Graph  # noqa: E402

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")


@st.composite
def connected_graphs(draw, min_n: int = 2, max_n: int = 8) -> Graph:
    """A random spanning tree plus random extra edges, then a random relabelling."""
    n = draw(st.integers(min_n, max_n))
    parents = [draw(st.integers(0, v - 1)) for v in range(1, n)]
    edges = {(p, v) for v, p in zip(range(1, n), parents)}
    extra = draw(st.sets(st.tuples(st.integers(0, n - 1), st.integers(0, n - 1)), max_size=2 * n))
    edges |= {(min(a, b), max(a, b)) for a, b in extra if a != b}
    perm = draw(st.permutations(range(n)))
    return Graph.from_edges(n, [(perm[a], perm[b]) for a, b in edges])


@st.composite
def trees(draw, min_n: int = 2, max_n: int = 12) -> Graph:
    n = draw(st.integers(min_n, max_n))
    parents = [draw(st.integers(0, v - 1)) for v in range(1, n)]
    perm = draw(st.permutations(range(n)))
    return Graph.from_edges(n, [(perm[p], perm[v]) for v, p in zip(range(1, n), parents)])
