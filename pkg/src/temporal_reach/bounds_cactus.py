"""Cactus-cover lower bounds.

A configuration is a family of vertex-disjoint stems (paths starting at an
input vertex) and cycles of state vertices.  Every state vertex entered by a
counted edge of the configuration is covered.  The maximum covered subset of
a prescribed vertex set is found exactly by one assignment problem:

* tails are all states and inputs, heads are all states and inputs;
* each real edge ``t -> h`` costs ``K + gain(t, h)``;
* a state may instead be assigned to itself (left uncovered), an input may be
  assigned to itself (unused), and any state may close back to any input
  (the end of a stem), each for ``K``.

``K`` exceeds the total gain, so every optimum is a perfect assignment, i.e.
a permutation.  Its cycles through inputs decode to stems, the rest to cycles
of real edges, so the optimum is a valid configuration and conversely.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Iterable, Sequence

import numpy as np
from scipy.optimize import linear_sum_assignment

from .bounds_cdg import build_system_digraph
from .graphkit import (BipartiteGraph, Digraph, Vertex, max_matching, reachable_from)
from .model import BadN, StructuredPair, TemporalNetwork, Verdict


# ------------------------------------------------------------------ solver

def _best_configuration(graph: Digraph, gain: Callable[[object, object], int]):
    """Stems and cycles of ``graph`` maximizing the summed gain of their edges.

    ``gain`` maps an edge to a non-negative integer.  Returns
    ``(stems, cycles, chosen_edges)``.
    """
    states = [v for v in graph.vertices if v.kind == "x"]
    inputs = [v for v in graph.vertices if v.kind == "u"]
    nodes = states + inputs
    if not states or not inputs:
        # without inputs no vertex is input-reachable; callers prune first
        return (), (), []
    pos = {v: i for i, v in enumerate(nodes)}
    gains = {}
    for t, h in graph.edges:
        if h.kind == "x":
            gains[(t, h)] = int(gain(t, h))
    K = sum(gains.values()) + 1
    size = len(nodes)
    w = np.full((size, size), -1.0)  # -1 marks forbidden pairs
    for v in nodes:
        w[pos[v], pos[v]] = K
    for x in states:
        for u in inputs:
            w[pos[x], pos[u]] = K
    real = np.zeros((size, size), dtype=bool)
    for (t, h), g in gains.items():
        i, j = pos[t], pos[h]
        if K + g >= w[i, j]:
            w[i, j] = K + g
            real[i, j] = True
    forbidden = w < 0
    w[forbidden] = -(K * size + 1)
    rows, cols = linear_sum_assignment(w, maximize=True)
    assert not forbidden[rows, cols].any()
    succ = {}
    for i, j in zip(rows, cols):
        if real[i, j]:
            succ[nodes[i]] = nodes[j]
    chosen = sorted(succ.items(), key=lambda e: (pos[e[0]], pos[e[1]]))
    stems, seen = [], set()
    for u in inputs:
        if u not in succ:
            continue
        path = [u]
        while path[-1] in succ:
            path.append(succ[path[-1]])
        seen.update(path)
        stems.append(tuple(path))
    cycles = []
    for x in states:
        if x in seen or x not in succ:
            continue
        cyc = [x]
        seen.add(x)
        while succ[cyc[-1]] != x:
            cyc.append(succ[cyc[-1]])
            seen.add(cyc[-1])
        cycles.append(tuple(cyc))
    return tuple(stems), tuple(cycles), chosen


def _check_configuration(graph: Digraph, stems, cycles) -> list[str]:
    errs = []
    used: set = set()
    for k, s in enumerate(stems):
        if not s:
            errs.append(f"stem {k} is empty")
            continue
        if s[0] not in graph or s[0].kind != "u":
            errs.append(f"stem {k} does not start at an input vertex")
        for v in s[1:]:
            if getattr(v, "kind", None) != "x":
                errs.append(f"stem {k}: {v} is not a state vertex")
    for k, c in enumerate(cycles):
        if not c:
            errs.append(f"cycle {k} is empty")
            continue
        for v in c:
            if getattr(v, "kind", None) != "x":
                errs.append(f"cycle {k}: {v} is not a state vertex")
    comps = [(f"stem {k}", list(s), list(zip(s, s[1:]))) for k, s in enumerate(stems)]
    comps += [(f"cycle {k}", list(c), list(zip(c, c[1:] + c[:1])))
              for k, c in enumerate(cycles) if c]
    for name, vs, es in comps:
        for v in vs:
            if v in used:
                errs.append(f"components not vertex-disjoint at {v}")
            used.add(v)
        for a, b in es:
            if not graph.has_edge(a, b):
                errs.append(f"{name}: ({a}, {b}) is not an edge")
    return errs


def _component_edges(stems, cycles):
    for s in stems:
        yield from zip(s, s[1:])
    for c in cycles:
        yield from zip(c, c[1:] + c[:1])


# --------------------------------------------------- single-subsystem covers

@dataclass(frozen=True)
class CactusCover:
    """Covered 0-based state indices of one subsystem, with stems and cycles as witness."""

    covered: frozenset
    stems: tuple = ()
    cycles: tuple = ()

    @property
    def size(self) -> int:
        return len(self.covered)


def _pruned_system(pair: StructuredPair, subsystem: int = 1) -> Digraph:
    g = build_system_digraph(pair, subsystem)
    return g.subgraph(reachable_from(g, [v for v in g.vertices if v.kind == "u"]))


def max_cactus_cover(pair: StructuredPair, allowed: Iterable[int] | None = None) -> CactusCover:
    """Largest subset of ``allowed`` (default: all states) covered by one configuration.

    With ``allowed`` = all states the size equals the generic dimension of
    the controllable subspace of the pair.
    """
    allowed = frozenset(range(pair.n)) if allowed is None else frozenset(allowed)
    if not allowed:
        return CactusCover(frozenset())
    g = _pruned_system(pair)
    hi = pair.n + 1

    def gain(t, h):
        return hi if h.node - 1 in allowed else 1

    stems, cycles, chosen = _best_configuration(g, gain)
    covered = frozenset(h.node - 1 for _, h in chosen) & allowed
    return CactusCover(covered, stems, cycles)


def verify_cactus_cover(pair: StructuredPair, cover: CactusCover) -> Verdict:
    g = _pruned_system(pair)
    errs = _check_configuration(g, cover.stems, cover.cycles)
    if not errs:
        heads = {h.node - 1 for _, h in _component_edges(cover.stems, cover.cycles)}
        extra = sorted(set(cover.covered) - heads)
        if extra:
            errs.append(f"claimed covered nodes {extra} are not covered")
    return Verdict.from_list(errs)


# ---------------------------------------------------------- greedy union

@dataclass
class GreedyResult:
    bound: int
    steps: list = field(default_factory=list)  # (subsystem, covered frozenset)

    @property
    def first_pick_size(self) -> int:
        return len(self.steps[0][1]) if self.steps else 0


def greedy_union_lower_bound(net: TemporalNetwork) -> GreedyResult:
    """Greedy union of per-subsystem covers; a lower bound on gdim of the reachable subspace.

    Each round picks the unused subsystem whose best cover inside the still
    uncovered nodes is largest (lowest index on ties).  The loop ends when
    every subsystem is used or a round adds nothing.
    """
    covered: set = set()
    remaining = list(range(net.N))
    steps = []
    while remaining:
        todo = frozenset(range(net.n)) - covered
        best_i, best = None, None
        for i in remaining:
            c = max_cactus_cover(net.pairs[i], todo).covered
            if best is None or len(c) > len(best):
                best_i, best = i, c
        covered |= best
        remaining.remove(best_i)
        steps.append((best_i, best))
        if not best:
            break
    return GreedyResult(len(covered), steps)


@dataclass
class Guarantee:
    ratio_bound: float
    f_values: list

    @property
    def best(self) -> float:
        return max([self.ratio_bound] + self.f_values)


def greedy_guarantee(N: int, opt_size: float, first_pick_size: float) -> Guarantee:
    """Worst-case guarantees for the greedy union.

    ``ratio_bound`` = (2N-3)/(N(N-1)) * opt_size; ``f_values[t]`` for
    t = 0..N-2 interpolates between the optimum and the first pick.
    """
    if N < 2:
        raise BadN(f"guarantee needs N >= 2, got {N}")
    ratio = (2 * N - 3) / (N * (N - 1)) * opt_size
    fs = []
    for t in range(N - 1):
        coef = (N - t - 1) / (N - 1) + sum((N - t - 1) / (N - j) for j in range(1, t + 1)) - t
        fs.append(t / (N - 1) * opt_size + coef * first_pick_size)
    return Guarantee(ratio, fs)


# ----------------------------------------------------- switching digraph

@dataclass
class SwitchingDigraph:
    raw: Digraph
    pruned: Digraph

    @property
    def switching_edges(self) -> list:
        return [e for e in self.raw.edges if self.raw.edge_kind(*e) == "switch"]


def build_switching_digraph(net: TemporalNetwork) -> SwitchingDigraph:
    """Union of the subsystem digraphs plus edges from every state copy to later copies of the same node.

    Switching edges point forward in subsystem order, so no cycle can
    contain one.
    """
    g = Digraph()
    for i, pair in enumerate(net.pairs, start=1):
        sub = build_system_digraph(pair, i)
        for v in sub.vertices:
            g.add_vertex(v)
        for a, b in sub.edges:
            g.add_edge(a, b, sub.edge_kind(a, b))
    for i in range(1, net.N + 1):
        for k in range(i + 1, net.N + 1):
            for j in range(1, net.n + 1):
                g.add_edge(Vertex("x", i, j), Vertex("x", k, j), "switch")
    keep = reachable_from(g, [v for v in g.vertices if v.kind == "u"])
    return SwitchingDigraph(g, g.subgraph(keep))


@dataclass(frozen=True)
class TemporalCactus:
    """Stems and cycles in the pruned switching digraph.

    ``covered`` maps a 0-based node index to the 1-based subsystem copy that
    covers it (the lowest one when several do).
    """

    stems: tuple = ()
    cycles: tuple = ()
    covered: dict = field(default_factory=dict, hash=False)

    @property
    def size(self) -> int:
        return len(self.covered)


def _covered_copies(graph: Digraph, stems, cycles) -> dict:
    out: dict = {}
    for a, b in _component_edges(stems, cycles):
        if graph.has_edge(a, b) and graph.edge_kind(a, b) != "switch" and b.kind == "x":
            node = b.node - 1
            out[node] = min(out.get(node, b.sub), b.sub)
    return dict(sorted(out.items()))


@dataclass
class CactusCheck:
    ok: bool
    violations: tuple
    covered: frozenset


def verify_temporal_cactus(net: TemporalNetwork, candidate: TemporalCactus) -> CactusCheck:
    """Check the configuration in the pruned switching digraph and recount its covered nodes.

    Only heads of non-switching edges count.  Claimed covered nodes that the
    recount does not confirm are violations.
    """
    g = build_switching_digraph(net).pruned
    errs = _check_configuration(g, candidate.stems, candidate.cycles)
    covered = _covered_copies(g, candidate.stems, candidate.cycles)
    extra = sorted(set(candidate.covered) - set(covered))
    if extra:
        errs.append(f"claimed covered nodes {extra} are not covered")
    return CactusCheck(not errs, tuple(errs), frozenset(covered))


def _sw_bipartite(net: TemporalNetwork, reach: set) -> BipartiteGraph:
    # rows: node indices; columns: reachable state copies (A'_k columns) and inputs (B_k columns)
    left = list(range(net.n))
    right, edges = [], []
    for k, pair in enumerate(net.pairs, start=1):
        for j in range(1, net.n + 1):
            if Vertex("x", k, j) in reach:
                right.append(Vertex("x", k, j))
        for c in range(1, pair.m + 1):
            right.append(Vertex("u", k, c))
        for r, c in pair.a.positions():
            if Vertex("x", k, r + 1) in reach and Vertex("x", k, c + 1) in reach:
                edges.append((r, Vertex("x", k, c + 1)))
        for r, c in pair.b.positions():
            edges.append((r, Vertex("u", k, c + 1)))
    return BipartiteGraph(left, right, edges)


def _matched_heads(bip: BipartiteGraph, order: Sequence[int], sub_of) -> set:
    perm = BipartiteGraph(bip.left, [bip.right[i] for i in order], bip.edges)
    _, pairs = max_matching(perm)
    return {Vertex("x", sub_of(col), row + 1) for row, col in pairs}


def temporal_cactus_lower_bound(net: TemporalNetwork, restarts: int = 8,
                                seed: int = 42) -> tuple[int, TemporalCactus]:
    """Lower bound on gdim of the overall reachable subspace from temporal cactus configurations.

    A maximum matching of the pruned pattern ``[A'_1..A'_N, B_1..B_N]`` names
    one subsystem copy per matched row; a configuration in the pruned
    switching digraph is then chosen to cover as many of those copies as
    possible (other non-switching heads act as tie-breakers).  Each restart
    shuffles the column order of the matching; restart 0 uses the natural
    order.  The best restart wins, earliest on ties.
    """
    if restarts < 1:
        raise ValueError("restarts must be >= 1")
    sw = build_switching_digraph(net)
    g = sw.pruned
    if not any(v.kind == "x" for v in g.vertices):
        return 0, TemporalCactus()
    bip = _sw_bipartite(net, set(g.vertices))
    rng = np.random.default_rng(seed)
    hi = len(g) + 1
    best = None
    for r in range(restarts):
        order = np.arange(len(bip.right)) if r == 0 else rng.permutation(len(bip.right))
        want = _matched_heads(bip, order.tolist(), lambda col: col.sub)

        def gain(t, h, want=want):
            if g.edge_kind(t, h) == "switch":
                return 0
            return hi if h in want else 1

        stems, cycles, _ = _best_configuration(g, gain)
        covered = _covered_copies(g, stems, cycles)
        if best is None or len(covered) > best.size:
            best = TemporalCactus(stems, cycles, covered)
    return best.size, best


def omega_h_lower_bound(net: TemporalNetwork) -> int:
    """max(greedy union, best single-subsystem cover)."""
    single = max((max_cactus_cover(p).size for p in net.pairs), default=0)
    return max(greedy_union_lower_bound(net).bound, single)
