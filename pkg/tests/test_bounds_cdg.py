import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import networks, random_nets
from oracles import nx_linking_size
from temporal_reach.bounds_cdg import (BadIndex, build_cdg, build_cdg_for_path,
                                       build_system_digraph, cdg_upper_bound, crp_check)
from temporal_reach.graphkit import Vertex, max_disjoint_linking
from temporal_reach.model import SparsityPattern, StructuredPair, TemporalNetwork
from temporal_reach.numeric_oracle import (measured_rank, oracle_gdim_clow, oracle_gdim_omega_h,
                                           controllability_matrix)

X = lambda i, j, t=0: Vertex("x", i, j, t)  # noqa: E731
U = lambda i, k, t=0: Vertex("u", i, k, t)  # noqa: E731


class TestSystemDigraph:
    def test_first_subsystem(self, ex1):
        g = build_system_digraph(ex1.pairs[0], 1)
        assert set(g.edges) == {(U(1, 1), X(1, 1)), (X(1, 1), X(1, 2))}

    def test_second_subsystem(self, ex1):
        g = build_system_digraph(ex1.pairs[1], 2)
        assert g.edges == [(X(2, 2), X(2, 3))]
        assert not [v for v in g.vertices if v.kind == "u"]

    def test_zero_pair(self):
        g = build_system_digraph(StructuredPair(SparsityPattern.zeros(2, 2), SparsityPattern.zeros(2, 0)))
        assert len(g) == 2 and g.n_edges == 0


class TestBuild:
    def test_vertex_count(self, ex1):
        # N n^2 states plus n copies of every input: 2*9 + 3*1
        assert len(build_cdg(ex1).graph) == 21

    @given(networks())
    def test_vertex_count_formula(self, net):
        assert len(build_cdg(net).graph) == net.N * net.n ** 2 + net.n * sum(net.m)

    def test_single_subsystem_has_no_cross_edges(self, ex1):
        g = build_cdg(ex1.subnetwork([0])).graph
        assert not [e for e in g.edges if g.edge_kind(*e) == "cross"]

    def test_cross_edge_through_second_subsystem(self, ex1):
        g = build_cdg(ex1).graph
        assert g.edge_kind(X(1, 2, 3), X(2, 3, 3)) == "cross"
        # self pairs are always present
        for k in (1, 2, 3):
            assert g.has_edge(X(1, k, 3), X(2, k, 3))
        assert not g.has_edge(X(1, 3, 3), X(2, 2, 3))

    def test_self_variant(self, ex1):
        g = build_cdg(ex1, cross="self").graph
        assert not g.has_edge(X(1, 2, 3), X(2, 3, 3))
        with pytest.raises(ValueError):
            build_cdg(ex1, cross="bogus")


class TestUpperBound:
    def test_example(self, ex1):
        res = cdg_upper_bound(ex1)
        assert res.bound == 2 and res.bound_n2_refined == 2
        cdg = build_cdg(ex1)
        assert res.witness.verify(cdg.graph, set(cdg.sources), set(cdg.sinks)).ok

    def test_three_subsystems(self, eh3):
        res = cdg_upper_bound(eh3)
        assert res.bound == 3 and res.bound_n2_refined is None

    def test_no_inputs(self):
        net = TemporalNetwork(3, tuple(StructuredPair(SparsityPattern.identity(3), SparsityPattern.zeros(3, 0))
                                       for _ in range(2)))
        assert cdg_upper_bound(net).bound == 0

    @given(networks(max_n=3, max_N=3))
    def test_linking_matches_networkx(self, net):
        cdg = build_cdg(net)
        size, _ = max_disjoint_linking(cdg.graph, cdg.sources, cdg.sinks)
        assert size == nx_linking_size(cdg.graph.vertices, cdg.graph.edges, cdg.sources, cdg.sinks)

    def test_single_subsystem_is_exact(self):
        # one subsystem: the linking size equals the rank of the controllability matrix
        for net in random_nets(40, seed=21, max_n=5, max_N=1):
            assert cdg_upper_bound(net).bound == oracle_gdim_omega_h(net).value

    def test_refined_bounds_two_subsystems(self):
        for net in random_nets(60, seed=22, max_n=4, min_N=2, max_N=2):
            res = cdg_upper_bound(net)
            assert res.bound_n2_refined <= res.bound
            assert oracle_gdim_omega_h(net).value <= res.bound_n2_refined
            assert oracle_gdim_clow(net).value <= res.bound_n2_refined


class TestPaths:
    def test_path_matches_network(self, ex1):
        a = build_cdg_for_path(ex1, [0, 1]).graph
        b = build_cdg(ex1).graph
        assert a.vertices == b.vertices and a.edges == b.edges

    def test_three_blocks(self, ex1):
        cdg = build_cdg_for_path(ex1, [0, 1, 0])
        assert cdg.N == 3 and {v.sub for v in cdg.graph.vertices} == {1, 2, 3}

    def test_bad_index(self, ex1):
        with pytest.raises(BadIndex):
            build_cdg_for_path(ex1, [6])
        with pytest.raises(BadIndex):
            crp_check(ex1, [])

    def test_switching_example(self):
        from temporal_reach.netjson import fixture
        sw = fixture("sw")
        assert crp_check(sw, [0, 1]) == (False, 2)
        assert crp_check(sw, [0, 1, 0]) == (True, 3)

    @given(networks(max_n=4, max_N=2))
    def test_length_one_is_single_pair(self, net):
        for i, p in enumerate(net.pairs):
            ok, size = crp_check(net, [i])
            single = TemporalNetwork(net.n, (p,))
            assert size == cdg_upper_bound(single).bound
            assert ok == (size == net.n)


def test_controllability_rank_helper_consistency(ex1):
    # the numeric helper used above agrees with the unit-valued hand computation
    import numpy as np
    a = np.array([[0, 0, 0], [1.0, 0, 0], [0, 0, 0]])
    b = np.array([[1.0], [0], [0]])
    assert measured_rank(controllability_matrix(a, b)) == 2


@given(networks(max_n=4, max_N=3), st.data())
def test_monotone_under_edge_deletion(net, data):
    edges = [(i, "a", p) for i, pr in enumerate(net.pairs) for p in pr.a.positions()]
    edges += [(i, "b", p) for i, pr in enumerate(net.pairs) for p in pr.b.positions()]
    if not edges:
        return
    i, which, pos = data.draw(st.sampled_from(edges))
    pr = net.pairs[i]
    smaller = StructuredPair(pr.a.without(pos), pr.b) if which == "a" else StructuredPair(pr.a, pr.b.without(pos))
    pairs = list(net.pairs)
    pairs[i] = smaller
    assert cdg_upper_bound(TemporalNetwork(net.n, tuple(pairs))).bound <= cdg_upper_bound(net).bound
