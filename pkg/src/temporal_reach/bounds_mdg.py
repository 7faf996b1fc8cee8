"""Multi-layer dynamic graph: upper bound on gdim of the overall reachable subspace."""
from __future__ import annotations

from dataclasses import dataclass

from .bounds_cactus import build_switching_digraph
from .graphkit import Digraph, Linking, Vertex, generic_rank, max_disjoint_linking
from .model import SparsityPattern, TemporalNetwork


@dataclass
class MDG:
    """Layered graph; layer 0 is the sink layer.

    Vertex tags: states ``Vertex("x", 0, j, layer, copy)`` (copy 0 in layer 0),
    inputs ``Vertex("u", t, k, layer, copy)`` for input k of subsystem t.
    """

    graph: Digraph
    sources: list
    sinks: list
    layers: int

    def layer(self, i: int) -> list:
        return [v for v in self.graph.vertices if v.layer == i]


def build_mdg(net: TemporalNetwork) -> MDG:
    """Copy k of a layer stands for products whose latest factor is A_k.

    Layer i >= 1 holds N state copies; copy p also carries the inputs of
    subsystems 1..p.  Edges run from copy k of layer i to copies q >= k of
    layer i-1 through the nonzeros of A_k.  Layer 0 has a single state copy
    and each subsystem's own inputs.
    """
    n, N = net.n, net.N
    l0 = N * (n - 1)
    g = Digraph()

    def state(j, layer, copy):
        return Vertex("x", 0, j, layer, 0 if layer == 0 else copy)

    for j in range(1, n + 1):
        g.add_vertex(state(j, 0, 0))
    for t, pair in enumerate(net.pairs, start=1):
        for k in range(1, pair.m + 1):
            g.add_vertex(Vertex("u", t, k, 0, t))
        for r, c in pair.b.positions():
            g.add_edge(Vertex("u", t, c + 1, 0, t), state(r + 1, 0, 0), "B")
    for i in range(1, l0 + 1):
        for p in range(1, N + 1):
            for j in range(1, n + 1):
                g.add_vertex(state(j, i, p))
            for t in range(1, p + 1):
                pair = net.pairs[t - 1]
                for k in range(1, pair.m + 1):
                    g.add_vertex(Vertex("u", t, k, i, p))
                for r, c in pair.b.positions():
                    g.add_edge(Vertex("u", t, c + 1, i, p), state(r + 1, i, p), "B")
        for k in range(1, N + 1):
            for r, c in net.pairs[k - 1].a.positions():
                for q in range(k, N + 1):
                    g.add_edge(state(c + 1, i, k), state(r + 1, i - 1, q), "A")
    sources = [v for v in g.vertices if v.kind == "u"]
    sinks = [state(j, 0, 0) for j in range(1, n + 1)]
    return MDG(g, sources, sinks, l0)


def mdg_upper_bound(net: TemporalNetwork) -> tuple[int, Linking]:
    mdg = build_mdg(net)
    return max_disjoint_linking(mdg.graph, mdg.sources, mdg.sinks)


def pruned_stack(net: TemporalNetwork) -> SparsityPattern:
    """``[A'_1, ..., A'_N, B_1, ..., B_N]`` with input-unreachable copies zeroed in each A'_k."""
    reach = set(build_switching_digraph(net).pruned.vertices)
    out = SparsityPattern.zeros(net.n, 0)
    for k, pair in enumerate(net.pairs, start=1):
        keep = [j for j in range(net.n) if Vertex("x", k, j + 1) in reach]
        out = out.hstack(pair.a.restrict(keep, keep))
    for pair in net.pairs:
        out = out.hstack(pair.b)
    return out


def full_dim_necessary_check(net: TemporalNetwork) -> tuple[bool, int]:
    """Generic rank of the pruned stacked pattern must reach n for a full-dimensional subspace."""
    r = generic_rank(pruned_stack(net))
    return r == net.n, r
