"""Cascaded dynamic graphs and the linking upper bound on gdim of the reachable subspace."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .graphkit import Digraph, Linking, Vertex, max_disjoint_linking, reachable_from
from .model import StructuredPair, TemporalNetwork


class BadIndex(IndexError):
    pass


def build_system_digraph(pair: StructuredPair, subsystem: int = 1) -> Digraph:
    """System digraph of one subsystem: ``x_k -> x_j`` iff A(j,k) != 0, ``u_k -> x_j`` iff B(j,k) != 0."""
    g = Digraph()
    for j in range(1, pair.n + 1):
        g.add_vertex(Vertex("x", subsystem, j))
    for k in range(1, pair.m + 1):
        g.add_vertex(Vertex("u", subsystem, k))
    for r, c in pair.b.positions():
        g.add_edge(Vertex("u", subsystem, c + 1), Vertex("x", subsystem, r + 1), "B")
    for r, c in pair.a.positions():
        g.add_edge(Vertex("x", subsystem, c + 1), Vertex("x", subsystem, r + 1), "A")
    return g


def state_closure(pair: StructuredPair) -> list[set[int]]:
    """``out[k]`` = 0-based states reachable from state k in G(A), k itself included."""
    g = Digraph(range(pair.n), [(c, r) for r, c in pair.a.positions()])
    return [reachable_from(g, [k]) for k in range(pair.n)]


@dataclass
class CDG:
    graph: Digraph
    sources: list
    sinks: list
    n: int
    N: int


def build_cdg(net: TemporalNetwork, cross: str = "closure") -> CDG:
    """Cascaded dynamic graph.

    Subsystem i contributes states ``Vertex("x", i, j, t)`` for t = 1..n and
    inputs ``Vertex("u", i, k, t)`` for t = 0..n-1.  Consecutive subsystems are
    joined between their last state layers: with ``cross="closure"`` by every
    pair (k, j) such that G(A_i) has a k -> j path, with ``cross="self"`` by
    the n pairs (k, k) only (the zero-duration variant).
    """
    if cross not in ("closure", "self"):
        raise ValueError(f"unknown cross-edge rule {cross!r}")
    n, N = net.n, net.N
    g = Digraph()
    sources = []
    for i, pair in enumerate(net.pairs, start=1):
        for t in range(1, n + 1):
            for j in range(1, n + 1):
                g.add_vertex(Vertex("x", i, j, t))
        for t in range(0, n):
            for k in range(1, pair.m + 1):
                g.add_vertex(Vertex("u", i, k, t))
                sources.append(Vertex("u", i, k, t))
    for i, pair in enumerate(net.pairs, start=1):
        for t in range(0, n):
            for r, c in pair.b.positions():
                g.add_edge(Vertex("u", i, c + 1, t), Vertex("x", i, r + 1, t + 1), "B")
        for t in range(1, n):
            for r, c in pair.a.positions():
                g.add_edge(Vertex("x", i, c + 1, t), Vertex("x", i, r + 1, t + 1), "A")
        if i >= 2:
            if cross == "closure":
                reach = state_closure(pair)
                links = [(k, j) for k in range(n) for j in sorted(reach[k])]
            else:
                links = [(k, k) for k in range(n)]
            for k, j in links:
                g.add_edge(Vertex("x", i - 1, k + 1, n), Vertex("x", i, j + 1, n), "cross")
    sinks = [Vertex("x", N, j, n) for j in range(1, n + 1)]
    return CDG(g, sources, sinks, n, N)


@dataclass
class CDGBound:
    bound: int
    witness: Linking
    bound_n2_refined: int | None = None


def cdg_upper_bound(net: TemporalNetwork) -> CDGBound:
    """Maximum linking from all input copies to the last state layer of subsystem N.

    For N = 2 the zero-duration variant bounds the same quantity, so the
    smaller of the two is also reported as ``bound_n2_refined``.
    """
    cdg = build_cdg(net)
    size, link = max_disjoint_linking(cdg.graph, cdg.sources, cdg.sinks)
    refined = None
    if net.N == 2:
        alt = build_cdg(net, cross="self")
        refined = min(size, max_disjoint_linking(alt.graph, alt.sources, alt.sinks)[0])
    return CDGBound(size, link, refined)


def _check_path(net: TemporalNetwork, path: Sequence[int]) -> list[int]:
    path = list(path)
    if not path:
        raise BadIndex("switching path must have length >= 1")
    for i in path:
        if not 0 <= i < net.N:
            raise BadIndex(f"subsystem index {i} outside 0..{net.N - 1}")
    return path


def build_cdg_for_path(net: TemporalNetwork, path: Sequence[int]) -> CDG:
    """CDG of the temporal network whose m-th subsystem is a fresh copy of ``path[m]`` (0-based)."""
    return build_cdg(net.subnetwork(_check_path(net, path)))


def crp_check(net: TemporalNetwork, path: Sequence[int]) -> tuple[bool, int]:
    """Necessary condition for a full-dimensional reachable subspace along ``path``."""
    cdg = build_cdg_for_path(net, path)
    size, _ = max_disjoint_linking(cdg.graph, cdg.sources, cdg.sinks)
    return size == net.n, size
