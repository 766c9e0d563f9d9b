from __future__ import annotations

import pytest
from hypothesis import given
from hypothesis import strategies as st

import oracles
from conftest import connected_graphs, trees
from kmetric import families
from kmetric.branches import (
    Leg,
    MajorBranch,
    branch_structure,
    contribution_total,
    dim_k_path,
    dim_r_tree,
    major_contribution,
    path_basis,
    tree_dimensional_k,
)
from kmetric.errors import InvalidParameterError
from kmetric.graph import Graph, all_pairs_distances
from kmetric.kernel import dimensional_k, forced_vertices, is_k_metric_generator, pair_profile
from kmetric.solver import dim_k_exact


def _summary(bs):
    return [(w.vertex, w.terminal_degree, w.shortest_leg, w.shortest_leg_pair) for w in bs.majors]


class TestBranchStructure:
    def test_figure_3(self):
        bs = branch_structure(families.figure_fixture(3))
        assert _summary(bs) == [(2, 3, 1, 3), (4, 2, 1, 3), (14, 2, 2, 4)]
        assert bs.shortest_leg_pair == 3
        assert bs.terminal_total == 7

    def test_figure_2(self):
        bs = branch_structure(families.figure_fixture(2))
        assert _summary(bs) == [(1, 3, 1, 3)]
        assert bs.terminal_total == 3

    def test_cycle_has_no_majors(self):
        bs = branch_structure(families.cycle(6))
        assert bs.majors == ()
        assert bs.shortest_leg_pair is None
        assert bs.terminal_total == 0

    def test_legs_are_real_paths(self):
        g = families.figure_fixture(3)
        dm = all_pairs_distances(g)
        for w in branch_structure(g, dm).majors:
            for leg in w.legs:
                assert leg.path[0] == leg.leaf and leg.path[-1] == w.vertex
                assert leg.length == dm[leg.leaf, w.vertex]
                assert all(g.has_edge(a, b) for a, b in zip(leg.path, leg.path[1:]))

    @given(connected_graphs(max_n=10))
    def test_terminals_match_definition(self, g):
        bs = branch_structure(g)
        got = {w.vertex: sorted(leg.leaf for leg in w.legs) for w in bs.majors}
        assert got == oracles.brute_terminals(g)

    @given(connected_graphs(max_n=10))
    def test_every_leaf_has_a_unique_closest_major(self, g):
        d = oracles.floyd_warshall(g.n, g.edges())
        majors = [v for v in range(g.n) if g.degree(v) >= 3]
        if not majors:
            return
        for u in (v for v in range(g.n) if g.degree(v) == 1):
            best = min(d[u][w] for w in majors)
            assert sum(d[u][w] == best for w in majors) == 1


class TestContribution:
    def test_figure_3_at_r2(self):
        bs = branch_structure(families.figure_fixture(3))
        assert [major_contribution(w, 2) for w in bs.majors] == [3, 2, 2]
        assert contribution_total(bs, 2) == 7

    def test_figure_2_at_r3(self):
        (w,) = branch_structure(families.figure_fixture(2)).majors
        assert major_contribution(w, 3) == 5

    @given(connected_graphs(max_n=10))
    def test_r1_is_terminals_minus_one(self, g):
        for w in branch_structure(g).majors:
            assert major_contribution(w, 1) == w.terminal_degree - 1

    def test_errors(self):
        lone = MajorBranch(0, (Leg(1, (1, 0)),))
        with pytest.raises(InvalidParameterError, match="terminal degree"):
            major_contribution(lone, 2)
        (w,) = branch_structure(families.star(3)).majors
        with pytest.raises(InvalidParameterError):
            major_contribution(w, 0)


class TestTreeFormulas:
    @pytest.mark.parametrize(
        "t, k",
        [(families.figure_fixture(2), 3), (families.star(4), 2), (families.spider(2, 2, 2), 4)],
    )
    def test_dimensional_value(self, t, k):
        assert tree_dimensional_k(t) == k
        assert dimensional_k(pair_profile(all_pairs_distances(t))) == k

    def test_dimensional_value_errors(self):
        with pytest.raises(InvalidParameterError, match="path"):
            tree_dimensional_k(families.path(5))
        with pytest.raises(InvalidParameterError, match="not a tree"):
            tree_dimensional_k(families.cycle(5))

    def test_figure_2(self):
        res = dim_r_tree(families.figure_fixture(2), 3)
        assert res.dim == 5
        assert res.basis == (0, 2, 4, 5, 6)

    def test_figure_6(self):
        t = families.figure_fixture(6)
        res = dim_r_tree(t, 3)
        assert res.dim == 6
        pp = pair_profile(all_pairs_distances(t))
        assert set(res.basis) == forced_vertices(pp, 3)

    def test_r_out_of_range(self):
        with pytest.raises(InvalidParameterError, match="3-metric dimensional"):
            dim_r_tree(families.figure_fixture(2), 4)

    @given(trees(min_n=4, max_n=11))
    def test_two_and_three(self, t):
        bs = branch_structure(t)
        if not bs.majors:
            return
        assert dim_r_tree(t, 2).dim == bs.terminal_total
        if bs.shortest_leg_pair >= 3:
            assert dim_r_tree(t, 3).dim == 2 * bs.terminal_total - len(bs.majors)

    @given(trees(min_n=2, max_n=10))
    def test_matches_solver_with_valid_witness(self, t):
        pp = pair_profile(all_pairs_distances(t))
        for r in range(1, dimensional_k(pp) + 1):
            res = dim_r_tree(t, r)
            assert res.dim == dim_k_exact(t, r).dim_k
            assert len(set(res.basis)) == res.dim
            assert is_k_metric_generator(pp, res.basis, r).ok

    def test_forced_set_is_tight(self):
        # two majors, each with legs of length 1 and 2
        edges = [(0, 1), (0, 2), (2, 3), (0, 4), (4, 5), (5, 6), (5, 7), (7, 8)]
        t = Graph.from_edges(9, edges)
        bs = branch_structure(t)
        assert len(bs.majors) == 2
        assert all(w.terminal_degree == 2 and w.shortest_leg_pair == 3 for w in bs.majors)
        pp = pair_profile(all_pairs_distances(t))
        assert dimensional_k(pp) == 3
        assert dim_k_exact(t, 3).dim_k == len(forced_vertices(pp, 3)) == 3 * len(bs.majors)


class TestPaths:
    @pytest.mark.parametrize("n, k, want", [(5, 1, 1), (5, 2, 2), (6, 4, 5), (6, 3, 4), (10, 5, 6), (2, 2, 2)])
    def test_values(self, n, k, want):
        assert dim_k_path(n, k) == want

    @pytest.mark.parametrize("n, k", [(5, 5), (5, 0), (1, 1), (2, 3)])
    def test_errors(self, n, k):
        with pytest.raises(InvalidParameterError):
            dim_k_path(n, k)

    @given(st.integers(2, 12), st.data())
    def test_basis_is_a_generator(self, n, data):
        g = families.path(n)
        pp = pair_profile(all_pairs_distances(g))
        k = data.draw(st.integers(1, dimensional_k(pp)))
        basis = path_basis(n, k)
        assert len(basis) == dim_k_path(n, k) == dim_k_exact(g, k).dim_k
        assert is_k_metric_generator(pp, basis, k).ok

    def test_tree_entry_point_handles_relabelled_paths(self):
        g = Graph.from_edges(5, [(3, 0), (0, 4), (4, 1), (1, 2)])
        pp = pair_profile(all_pairs_distances(g))
        for r in range(1, 5):
            res = dim_r_tree(g, r)
            assert res.dim == dim_k_path(5, r)
            assert is_k_metric_generator(pp, res.basis, r).ok
