from __future__ import annotations

import itertools

import pytest
from hypothesis import given

import oracles
from conftest import connected_graphs
from kmetric import families
from kmetric.errors import InvalidParameterError
from kmetric.graph import Graph, all_pairs_distances
from kmetric.kernel import (
    TwinKind,
    are_twins,
    dimensional_k,
    forced_vertices,
    is_k_metric_generator,
    mask_of,
    members,
    pair_index,
    pair_profile,
    popcount,
    twin_partition,
)


def profile(g):
    return pair_profile(all_pairs_distances(g))


def test_bitset_helpers():
    assert mask_of([0, 3, 5]) == 0b101001
    assert members(0b101001) == [0, 3, 5]
    assert popcount(0b101001) == 3
    n = 5
    idx = [pair_index(x, y, n) for x, y in itertools.combinations(range(n), 2)]
    assert idx == list(range(n * (n - 1) // 2))


class TestDistinctiveSets:
    def test_cycle_antipodes(self):
        assert profile(families.cycle(4)).distinctive_set(0, 2) == {0, 2}

    def test_path(self):
        assert profile(families.path(4)).distinctive_set(0, 2) == {0, 2, 3}

    def test_triangle(self):
        pp = profile(families.complete(3))
        assert all(pp.distinctive_set(x, y) == {x, y} for x, y in itertools.combinations(range(3), 2))

    def test_order_of_arguments_is_irrelevant(self):
        pp = profile(families.figure_fixture(3))
        assert pp.distinctive(4, 9) == pp.distinctive(9, 4)

    @given(connected_graphs())
    def test_matches_brute_force(self, g):
        pp = profile(g)
        ref = oracles.all_distinctive(g)
        assert {pair: set(pp.distinctive_set(*pair)) for pair in ref} == ref
        # both ends of a pair always tell it apart
        assert all(pp.distinctive(x, y) >> x & 1 and pp.distinctive(x, y) >> y & 1 for x, y in ref)


class TestDimensionalValue:
    @pytest.mark.parametrize(
        "g, k",
        [
            (families.cycle(4), 2),
            (families.cycle(7), 6),
            (families.figure_fixture(5), 6),
            (families.complete(2), 2),
            (families.path(6), 5),
        ],
    )
    def test_examples(self, g, k):
        assert dimensional_k(profile(g)) == k

    @given(connected_graphs())
    def test_matches_brute_force(self, g):
        k = dimensional_k(profile(g))
        assert k == oracles.brute_dimensional_k(g)
        assert 2 <= k <= g.n
        assert (k == g.n) == (g.n == 2)


class TestForcedSet:
    def test_cycle(self):
        assert forced_vertices(profile(families.cycle(4)), 2) == {0, 1, 2, 3}

    def test_figure_1(self):
        assert forced_vertices(profile(families.figure_fixture(1)), 2) == {0, 1, 3, 4}

    def test_wheel(self):
        assert forced_vertices(profile(families.wheel(5)), 4) == set(range(6))

    @given(connected_graphs(max_n=7))
    def test_contained_in_every_basis(self, g):
        pp = profile(g)
        k = dimensional_k(pp)
        forced = forced_vertices(pp, k)
        basis = oracles.naive_basis(g, k)
        assert forced <= set(basis)


class TestTwins:
    def test_complete_bipartite(self):
        tp = twin_partition(families.complete_bipartite(2, 3))
        classes = sorted((sorted(c.vertices), c.kind) for c in tp.non_singleton())
        assert classes == [([0, 1], TwinKind.FALSE_TWIN), ([2, 3, 4], TwinKind.FALSE_TWIN)]

    def test_figure_1(self):
        tp = twin_partition(families.figure_fixture(1))
        classes = sorted(sorted(c.vertices) for c in tp.non_singleton())
        assert classes == [[0, 4], [1, 3]]
        assert all(c.kind is TwinKind.FALSE_TWIN for c in tp.non_singleton())
        assert tp.twin_vertex_count() == 4
        assert not tp.all_twins()

    def test_complete(self):
        tp = twin_partition(families.complete(4))
        assert [sorted(c.vertices) for c in tp.classes] == [[0, 1, 2, 3]]
        assert tp.classes[0].kind is TwinKind.TRUE_TWIN
        assert tp.all_twins()
        assert len(tp.true_twin_classes()) == 1

    def test_disconnected_input_is_fine(self):
        tp = twin_partition(families.empty(3))
        assert [sorted(c.vertices) for c in tp.non_singleton()] == [[0, 1, 2]]

    @given(connected_graphs())
    def test_twins_iff_distinctive_pair(self, g):
        pp = profile(g)
        tp = twin_partition(g)
        cls = {v: i for i, c in enumerate(tp.classes) for v in c.vertices}
        for x, y in itertools.combinations(range(g.n), 2):
            twins = pp.size(x, y) == 2
            assert are_twins(g, x, y) == twins
            assert (cls[x] == cls[y]) == twins


class TestGeneratorCheck:
    def test_figure_2_basis(self):
        pp = profile(families.figure_fixture(2))
        assert is_k_metric_generator(pp, [0, 2, 4, 5, 6], 3).ok

    def test_cycle_witness(self):
        pp = profile(families.cycle(4))
        verdict = is_k_metric_generator(pp, [1, 2, 3], 2)
        assert not verdict.ok
        assert verdict.witness == (0, 2)
        assert verdict.achieved == 1

    @given(connected_graphs())
    def test_whole_vertex_set_is_a_2_generator(self, g):
        assert is_k_metric_generator(profile(g), range(g.n), 2).ok

    @given(connected_graphs(max_n=7))
    def test_agrees_with_brute_force(self, g):
        pp = profile(g)
        k = dimensional_k(pp)
        for s in range(min(1 << g.n, 128)):
            vs = members(s)
            assert is_k_metric_generator(pp, vs, k).ok == oracles.brute_is_generator(g, vs, k)

    def test_single_vertex_graph_has_no_profile(self):
        with pytest.raises(InvalidParameterError):
            profile(Graph.from_edges(1, []))
