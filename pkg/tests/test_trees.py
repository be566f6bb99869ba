import math
from collections import Counter

import pytest
from hypothesis import given, strategies as st

from treedisc import (
    CertificateError,
    Cyclic,
    Disconnected,
    DuplicateEdge,
    Graph,
    IsPath,
    ParamOutOfRange,
    ParseError,
    SelfLoop,
    Tree,
    branching_path,
    caterpillar,
    contract,
    emit_dot,
    emit_edge_list,
    from_edge_list,
    grid_plus,
    leafy_spanning_tree,
    leaves,
    parse_edge_list,
    path,
    path_between,
    random_tree,
    spider,
    star,
)
from bruteforce import spanning_trees


class TestFromEdgeList:
    def test_single_edge(self):
        t = from_edge_list([(0, 1)])
        assert t.n == 2 and t.m == 1
        assert leaves(t) == {0, 1}

    def test_star_shape(self):
        t = from_edge_list([(0, 1), (1, 2), (1, 3)])
        assert t.deg[1] == 3
        assert leaves(t) == {0, 2, 3}

    def test_cyclic(self):
        with pytest.raises(Cyclic):
            from_edge_list([(0, 1), (0, 2), (1, 2)])

    def test_self_loop(self):
        with pytest.raises(SelfLoop):
            from_edge_list([(0, 0)])

    def test_duplicate(self):
        with pytest.raises(DuplicateEdge):
            from_edge_list([(0, 1), (1, 0)])

    def test_disconnected(self):
        with pytest.raises(Disconnected):
            from_edge_list([(0, 1), (2, 3)])

    def test_empty(self):
        with pytest.raises(ParamOutOfRange):
            from_edge_list([])


class TestLeaves:
    def test_path(self):
        assert leaves(path(5)) == {0, 4}

    def test_star(self):
        assert len(leaves(star(7))) == 7

    def test_spider(self):
        assert len(leaves(spider(3, 5))) == 5


class TestBranchingPath:
    def test_spider_leg(self):
        t = spider(3, 5)
        for leaf in sorted(leaves(t)):
            p = branching_path(t, leaf)
            assert p.anchor == 0
            assert len(p.edge_ids) == 3
            # ordered from the anchor: first edge touches the root
            assert 0 in t.edges[p.edge_ids[0]]

    def test_star_leaf(self):
        p = branching_path(star(4), 1)
        assert p.anchor == 0 and len(p.edge_ids) == 1

    def test_path_has_no_anchor(self):
        with pytest.raises(IsPath):
            branching_path(path(6), 0)

    def test_non_leaf_rejected(self):
        with pytest.raises(ParamOutOfRange):
            branching_path(star(3), 0)


class TestGenerators:
    def test_spider_size(self):
        t = spider(3, 5)
        assert t.n == 16 and t.m == 15

    def test_path_minimum(self):
        assert path(2).m == 1
        with pytest.raises(ParamOutOfRange):
            path(1)

    def test_star_param(self):
        with pytest.raises(ParamOutOfRange):
            star(1)

    def test_spider_params(self):
        with pytest.raises(ParamOutOfRange):
            spider(0, 3)
        with pytest.raises(ParamOutOfRange):
            spider(2, 1)

    def test_caterpillar_leaves(self):
        t = caterpillar(4, 2)
        assert t.n == 4 + 8
        assert len(leaves(t)) == 8

    def test_caterpillar_no_legs_is_path(self):
        assert caterpillar(5, 0).edges == path(5).edges

    def test_random_tree_deterministic(self):
        assert random_tree(50, seed=7).edges == random_tree(50, seed=7).edges

    def test_random_tree_seed_matters(self):
        assert random_tree(50, seed=7).edges != random_tree(50, seed=8).edges

    def test_random_tree_param(self):
        with pytest.raises(ParamOutOfRange):
            random_tree(1, seed=0)


def test_prufer_uniformity():
    # 5^3 = 125 labelled trees on 5 vertices; every one should appear with
    # frequency 1/125 within 5 sigma over 10^4 samples
    samples = 10_000
    counts = Counter()
    for s in range(samples):
        t = random_tree(5, seed=s)
        counts[tuple(sorted(tuple(sorted(e)) for e in t.edges))] += 1
    assert len(counts) == 125
    p = 1 / 125
    sigma = math.sqrt(p * (1 - p) / samples)
    for freq in counts.values():
        assert abs(freq / samples - p) < 5 * sigma


class TestGridPlus:
    def test_two_by_two(self):
        g = grid_plus(2, 2)
        assert g.n == 4 and len(g.edges) == 6
        deg = [0] * g.n
        for u, v in g.edges:
            deg[u] += 1
            deg[v] += 1
        assert min(deg) == 3

    @pytest.mark.parametrize("m,n", [(4, 5), (2, 3), (3, 2), (5, 2), (6, 6)])
    def test_min_degree_three(self, m, n):
        g = grid_plus(m, n)
        deg = [0] * g.n
        for u, v in g.edges:
            deg[u] += 1
            deg[v] += 1
        assert min(deg) >= 3

    def test_matching_edges_are_last_and_cover_corners(self):
        m, n = 4, 5
        g = grid_plus(m, n)
        corners = {0, n - 1, (m - 1) * n, m * n - 1}
        extra = {v for e in g.edges[-2:] for v in e}
        assert extra == corners

    def test_param(self):
        with pytest.raises(ParamOutOfRange):
            grid_plus(1, 5)


class TestLeafySpanningTree:
    @pytest.mark.parametrize("m,n", [(4, 5), (4, 4), (5, 8)])
    def test_grid_meets_kleitman_west_count(self, m, n):
        target = -((-m * n) // 4) + 2
        t = leafy_spanning_tree(grid_plus(m, n), min_leaves=target)
        assert t.n == m * n
        assert len(leaves(t)) >= m * n / 4 + 2

    def test_complete_graph_k4(self):
        g = Graph(4, [(a, b) for a in range(4) for b in range(a + 1, 4)])
        best = max(len(leaves(s)) for s in spanning_trees(g))
        assert best == 3  # exhaustive over the 16 spanning trees
        t = leafy_spanning_tree(g)
        assert len(leaves(t)) == 3

    def test_cycle_no_guarantee(self):
        g = Graph(5, [(i, (i + 1) % 5) for i in range(5)])
        t = leafy_spanning_tree(g)
        assert t.n == 5  # some spanning tree; min degree < 3 so no bound

    def test_disconnected_rejected(self):
        with pytest.raises(Disconnected):
            leafy_spanning_tree(Graph(4, [(0, 1), (2, 3)]))

    def test_unreachable_target_is_hard_error(self):
        g = Graph(5, [(i, (i + 1) % 5) for i in range(5)])
        with pytest.raises(CertificateError):
            leafy_spanning_tree(g, min_leaves=4)


class TestContract:
    def test_path3_contracts_to_path2(self):
        t1, vmap = contract(path(3), 0)
        assert t1.n == 2 and t1.m == 1
        assert vmap == (0, 0, 1)

    def test_star3_loses_a_leaf(self):
        t = star(3)
        t1, _ = contract(t, 0)
        assert len(leaves(t1)) == 2
        assert len(leaves(t)) == 3

    def test_internal_edge_keeps_leaf_count(self):
        t = caterpillar(4, 1)  # spine 0-1-2-3, one leg each
        e = next(i for i, (u, v) in enumerate(t.edges) if {u, v} == {1, 2})
        t1, _ = contract(t, e)
        assert len(leaves(t1)) == len(leaves(t))

    def test_edge_indices_preserved_in_order(self):
        t = path(5)
        t1, vmap = contract(t, 2)
        # surviving edges keep relative order: old k -> k if k < 2 else k-1
        for old in (0, 1, 3):
            new = old if old < 2 else old - 1
            a, b = t.edges[old]
            assert t1.edges[new] == (vmap[a], vmap[b])

    def test_bad_index(self):
        from treedisc import BadEdgeIndex
        with pytest.raises(BadEdgeIndex):
            contract(path(3), 5)


class TestSerialization:
    def test_round_trip_single_edge(self):
        text = "2 1\n0 1"
        t = parse_edge_list(text)
        assert emit_edge_list(t) == "2 1\n0 1\n"

    def test_round_trip_spider(self):
        t = spider(2, 3)
        again = parse_edge_list(emit_edge_list(t))
        assert again.edges == t.edges

    def test_duplicate_edge_propagates(self):
        with pytest.raises(DuplicateEdge):
            parse_edge_list("3 2\n0 1\n0 1")

    def test_bad_header(self):
        with pytest.raises(ParseError) as exc:
            parse_edge_list("banana")
        assert exc.value.line == 1

    def test_bad_edge_line(self):
        with pytest.raises(ParseError) as exc:
            parse_edge_list("3 2\n0 1\n0")
        assert exc.value.line == 3

    def test_missing_line(self):
        with pytest.raises(ParseError):
            parse_edge_list("3 2\n0 1")

    def test_vertex_out_of_range(self):
        with pytest.raises(ParseError):
            parse_edge_list("2 1\n0 5")

    def test_declared_n_too_big(self):
        with pytest.raises(Disconnected):
            parse_edge_list("3 1\n0 1")

    def test_dot_plain(self):
        out = emit_dot(path(3))
        assert out.startswith("graph tree {")
        assert "0 -- 1;" in out

    def test_dot_oriented_and_coloured(self):
        out = emit_dot(path(3), colouring=[1, 2], orientation=[0, 1])
        assert out.startswith("digraph tree {")
        assert "0 -> 1" in out and "2 -> 1" in out
        assert 'label="2"' in out


def test_path_between():
    t = spider(2, 3)
    verts, eids = path_between(t, 2, 4)
    assert verts == [2, 1, 0, 3, 4]
    assert len(eids) == 4


@given(st.integers(2, 40), st.integers(0, 10_000))
def test_random_tree_valid_and_roundtrips(n, seed):
    t = random_tree(n, seed)
    assert t.n == n and t.m == n - 1  # ctor enforces connected/acyclic
    assert parse_edge_list(emit_edge_list(t)).edges == t.edges


@given(st.integers(1, 4), st.integers(2, 6))
def test_spider_leaf_count(k, ell):
    assert len(leaves(spider(k, ell))) == ell
