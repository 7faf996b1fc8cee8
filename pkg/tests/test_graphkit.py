import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import patterns
from oracles import nx_linking_size, nx_matching_size, ref_rank
from temporal_reach.bounds_cdg import build_cdg
from temporal_reach.graphkit import (BipartiteGraph, Digraph, Linking, NegativeWeight,
                                     UnknownVertex, generic_rank, max_disjoint_linking,
                                     max_matching, max_weighted_matching, pattern_bipartite,
                                     reachable_from)
from temporal_reach.model import SparsityPattern, TemporalNetwork, sample_realization


@st.composite
def digraphs(draw, max_v=9):
    nv = draw(st.integers(1, max_v))
    edges = draw(st.lists(st.tuples(st.integers(0, nv - 1), st.integers(0, nv - 1)), max_size=3 * nv))
    return Digraph(range(nv), edges)


class TestReachability:
    def test_edgeless(self):
        g = Digraph("abc")
        assert reachable_from(g, "ab") == {"a", "b"}

    def test_chain(self):
        g = Digraph("abc", [("a", "b"), ("b", "c")])
        assert reachable_from(g, "a") == {"a", "b", "c"}
        assert reachable_from(g, "c") == {"c"}

    def test_unknown_vertex(self):
        with pytest.raises(UnknownVertex):
            reachable_from(Digraph("a"), "z")

    @given(digraphs(), st.data())
    def test_closed_under_successors(self, g, data):
        srcs = data.draw(st.lists(st.sampled_from(g.vertices), max_size=3))
        r = reachable_from(g, srcs)
        assert set(srcs) <= r
        for a, b in g.edges:
            if a in r:
                assert b in r


class TestMatching:
    def test_complete(self):
        bg = BipartiteGraph([0, 1, 2], "abc", [(i, c) for i in range(3) for c in "abc"])
        assert max_matching(bg)[0] == 3

    def test_empty(self):
        assert max_matching(BipartiteGraph([0], ["a"], []))[0] == 0

    def test_example_subsystem_stack(self, ex1):
        p = ex1.pairs[0]
        stack = p.a.hstack(p.b)
        assert generic_rank(stack) == 2
        r = sample_realization(TemporalNetwork(3, (p,)), 0)
        assert ref_rank(np.hstack([r.a_mats[0], r.b_mats[0]])) == 2

    def test_identity_and_zero(self):
        assert generic_rank(SparsityPattern.identity(5)) == 5
        assert generic_rank(SparsityPattern.zeros(4, 4)) == 0

    @given(patterns(5, 5))
    def test_generic_rank_matches_numeric(self, p):
        rng = np.random.default_rng(p.nnz)
        best = 0
        for _ in range(3):
            M = np.zeros((5, 5))
            for r, c in p.positions():
                M[r, c] = rng.uniform(0.1, 1) * rng.choice([-1, 1])
            best = max(best, ref_rank(M))
        assert generic_rank(p) == best

    @given(st.integers(1, 7), st.integers(1, 7), st.data())
    def test_matches_networkx(self, nl, nr, data):
        edges = data.draw(st.lists(st.tuples(st.integers(0, nl - 1), st.integers(0, nr - 1)),
                                   max_size=nl * nr, unique=True))
        size, pairs = max_matching(BipartiteGraph(list(range(nl)), list(range(nr)), edges))
        assert size == nx_matching_size(range(nl), range(nr), edges)
        assert len({l for l, _ in pairs}) == size == len({r for _, r in pairs})
        assert set(pairs) <= set(edges)

    def test_bipartition_checked(self):
        with pytest.raises(UnknownVertex):
            BipartiteGraph([0], [1], [(1, 0)])


class TestWeightedMatching:
    def test_single_edge(self):
        bg = BipartiteGraph([0], [0], [(0, 0)], {(0, 0): 5.0})
        assert max_weighted_matching(bg)[0] == 5.0

    def test_shared_vertex(self):
        bg = BipartiteGraph([0, 1], [0], [(0, 0), (1, 0)], {(0, 0): 3.0, (1, 0): 4.0})
        assert max_weighted_matching(bg) == (4.0, [(1, 0)])

    @given(st.integers(1, 6), st.integers(1, 6), st.data())
    def test_unit_weights_give_cardinality(self, nl, nr, data):
        edges = data.draw(st.lists(st.tuples(st.integers(0, nl - 1), st.integers(0, nr - 1)),
                                   max_size=nl * nr, unique=True))
        bg = BipartiteGraph(list(range(nl)), list(range(nr)), edges)
        w, pairs = max_weighted_matching(bg)
        assert w == len(pairs) == max_matching(bg)[0]

    def test_negative_rejected(self):
        with pytest.raises(NegativeWeight):
            max_weighted_matching(BipartiteGraph([0], [0], [(0, 0)], {(0, 0): -1.0}))


class TestLinking:
    def test_single_vertex(self):
        size, link = max_disjoint_linking(Digraph("v"), "v", "v")
        assert size == 1 and link.paths == (("v",),)

    def test_example_cdg(self, ex1):
        cdg = build_cdg(ex1)
        size, link = max_disjoint_linking(cdg.graph, cdg.sources, cdg.sinks)
        assert size == 2
        assert link.verify(cdg.graph, set(cdg.sources), set(cdg.sinks)).ok

    def test_parallel_chains(self):
        g = Digraph(["s1", "a", "t1", "s2", "b", "t2"],
                    [("s1", "a"), ("a", "t1"), ("s2", "b"), ("b", "t2")])
        assert max_disjoint_linking(g, ["s1", "s2"], ["t1", "t2"])[0] == 2

    def test_bottleneck(self):
        g = Digraph("abcde", [("a", "c"), ("b", "c"), ("c", "d"), ("c", "e")])
        assert max_disjoint_linking(g, "ab", "de")[0] == 1

    @given(digraphs(), st.data())
    def test_matches_networkx_and_verifies(self, g, data):
        vs = list(g.vertices)
        srcs = data.draw(st.sets(st.sampled_from(vs)))
        snks = data.draw(st.sets(st.sampled_from(vs)))
        size, link = max_disjoint_linking(g, srcs, snks)
        assert size == nx_linking_size(vs, g.edges, srcs, snks)
        assert link.verify(g, srcs, snks).ok

    def test_verify_flags_problems(self):
        g = Digraph("abc", [("a", "b")])
        bad = Linking((("a", "c"), ("c",)))
        v = bad.verify(g, {"a"}, {"b"})
        assert not v.ok
        assert any("not an edge" in m for m in v.violations)
        assert any("vertex-disjoint" in m for m in v.violations)


def test_pattern_bipartite_shape():
    p = SparsityPattern(2, 3, frozenset({(0, 1), (1, 2)}))
    bg = pattern_bipartite(p)
    assert bg.left == [0, 1] and bg.right == [0, 1, 2] and sorted(bg.edges) == [(0, 1), (1, 2)]


def test_digraph_basics():
    g = Digraph()
    g.add_vertex("x")
    g.add_vertex("y")
    g.add_edge("x", "y", "cross")
    g.add_edge("x", "y")
    assert g.n_edges == 1 and g.edge_kind("x", "y") == "cross"
    assert g.successors("x") == ["y"] and "x" in g and len(g) == 2
    sub = g.subgraph(["x"])
    assert sub.vertices == ("x",) and sub.n_edges == 0
