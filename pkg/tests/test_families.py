from __future__ import annotations

import networkx as nx
import pytest
from hypothesis import given
from hypothesis import strategies as st

import oracles
from kmetric import families
from kmetric.errors import DisconnectedGraphError, InvalidParameterError
from kmetric.families import FamilySpec, generate, parse_family_token
from kmetric.graph import structural_stats
from kmetric.kernel import TwinKind, twin_partition

small = st.sampled_from([
    FamilySpec("path", (2,)), FamilySpec("path", (3,)), FamilySpec("path", (4,)),
    FamilySpec("complete", (3,)), FamilySpec("cycle", (4,)), FamilySpec("star", (3,)),
    FamilySpec("empty", (2,)),
])


def test_wheel():
    g = families.wheel(5)
    assert g.n == 6
    assert structural_stats(g).max_degree == 5
    assert g.degree(5) == 5


def test_fan_and_star_hub_is_last():
    assert families.fan(4).degree(4) == 4
    assert families.star(4).degree(4) == 4


def test_grid():
    g = families.cartesian_product(families.path(2), families.path(3))
    assert (g.n, g.m) == (6, 7)
    assert nx.is_isomorphic(oracles.to_nx(g), nx.grid_2d_graph(2, 3))


def test_strong_product_twins():
    g = families.strong_product(families.complete(2), families.path(3))
    assert g.n == 6
    tp = twin_partition(g)
    assert all(c.kind is TwinKind.TRUE_TWIN for c in tp.classes)


@given(small, small)
def test_product_edge_counts_match_networkx(a, b):
    g, h = generate(a, require_connected=False), generate(b, require_connected=False)
    cart = families.cartesian_product(g, h)
    strong = families.strong_product(g, h)
    assert cart.m == g.m * h.n + h.m * g.n
    assert strong.m == g.m * h.n + h.m * g.n + 2 * g.m * h.m
    assert nx.is_isomorphic(oracles.to_nx(cart), nx.cartesian_product(oracles.to_nx(g), oracles.to_nx(h)))
    assert nx.is_isomorphic(oracles.to_nx(strong), nx.strong_product(oracles.to_nx(g), oracles.to_nx(h)))


@given(small, small)
def test_join_degrees(a, b):
    g, h = generate(a, require_connected=False), generate(b, require_connected=False)
    j = families.join(g, h)
    assert j.m == g.m + h.m + g.n * h.n
    assert all(j.degree(v) == g.degree(v) + h.n for v in range(g.n))
    assert all(j.degree(g.n + v) == h.degree(v) + g.n for v in range(h.n))


def test_complete_bipartite():
    g = families.complete_bipartite(2, 3)
    assert nx.is_isomorphic(oracles.to_nx(g), nx.complete_bipartite_graph(2, 3))


def test_spider():
    g = families.spider(2, 2, 2)
    assert g.n == 7 and g.degree(0) == 3
    assert sorted(g.degree(v) for v in range(g.n)) == [1, 1, 1, 2, 2, 2, 3]


@given(st.integers(1, 30), st.integers(0, 10_000))
def test_random_tree_is_deterministic_tree(n, seed):
    t = families.random_tree(n, seed)
    assert t == families.random_tree(n, seed)
    assert t.m == n - 1 and t.is_connected()


def test_prufer_decoding_is_a_bijection_on_small_n():
    # Cayley: 4^2 = 16 labelled trees on 4 vertices, each from exactly one sequence
    seen = {tuple(families.prufer_decode([a, b], 4)) for a in range(4) for b in range(4)}
    assert len(seen) == 16


def test_generalized_tree_is_a_block_graph():
    g = families.generalized_tree((3, 2, 4, 3), seed=2)
    h = oracles.to_nx(g)
    assert g.n == 3 + 1 + 3 + 2
    assert all(len(b) in (2, 3, 4) and nx.density(h.subgraph(b)) == 1 for b in nx.biconnected_components(h))


def test_figure_2_edges():
    # v1v2, v2v3, v2v4, v3v5, v4v6, v6v7 in 0-based labels
    g = families.figure_fixture(2)
    assert g.edges() == [(0, 1), (1, 2), (1, 3), (2, 4), (3, 5), (5, 6)]


def test_figure_5_edges():
    g = families.figure_fixture(5)
    assert (g.n, g.m) == (8, 9)


def test_generate_operators():
    spec = FamilySpec("join", operands=(FamilySpec("empty", (2,)), FamilySpec("empty", (3,))))
    assert generate(spec) == families.complete_bipartite(2, 3)
    assert spec.label() == "join(empty(2),empty(3))"


def test_generate_disconnected_union():
    spec = FamilySpec("union", operands=(FamilySpec("path", (2,)), FamilySpec("path", (2,))))
    with pytest.raises(DisconnectedGraphError):
        generate(spec)
    assert generate(spec, require_connected=False).component_count() == 2


@pytest.mark.parametrize(
    "spec, match",
    [
        (FamilySpec("dodecahedron", (1,)), "unknown family"),
        (FamilySpec("path", ()), "takes 1"),
        (FamilySpec("complete_bipartite", (2,)), "takes 2"),
        (FamilySpec("join", operands=(FamilySpec("path", (2,)),)), "two operand"),
        (FamilySpec("cycle", (2,)), "n >= 3"),
        (FamilySpec("figure_fixture", (4,)), "no figure fixture"),
        (FamilySpec("spider", ()), "at least one"),
    ],
)
def test_generate_errors(spec, match):
    with pytest.raises(InvalidParameterError, match=match):
        generate(spec)


def test_parse_family_token():
    assert parse_family_token("path:3") == FamilySpec("path", (3,))
    assert parse_family_token("complete_bipartite:2,3") == FamilySpec("complete_bipartite", (2, 3))
    assert parse_family_token("random_tree:8@5") == FamilySpec("random_tree", (8,), seed=5)
