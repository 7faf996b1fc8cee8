"""Graph kernel: tagged digraphs, reachability, matchings and linkings."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Hashable, Iterable, NamedTuple, Sequence

import numpy as np
from scipy.optimize import linear_sum_assignment

from . import kernels
from .model import SparsityPattern, Verdict


class UnknownVertex(KeyError):
    pass


class NegativeWeight(ValueError):
    pass


class Vertex(NamedTuple):
    """Tagged vertex.

    ``kind`` is ``"x"`` (state) or ``"u"`` (input).  ``sub`` is the 1-based
    subsystem index (0 when not tied to one subsystem), ``node`` the 1-based
    state or input index, ``layer`` the time/layer index and ``copy`` the
    copy index used by multi-layer graphs.
    """

    kind: str
    sub: int
    node: int
    layer: int = 0
    copy: int = 0

    def label(self) -> str:
        base = ("x" if self.kind == "x" else "u") + str(self.node)
        parts = []
        if self.sub:
            parts.append(f"s{self.sub}")
        if self.copy:
            parts.append(f"c{self.copy}")
        parts.append(f"t{self.layer}")
        return base + "^" + ",".join(parts)


class Digraph:
    """Directed graph over hashable vertices, with ids in insertion order.

    Build it with :meth:`add_vertex` / :meth:`add_edge`, then treat it as
    immutable.  Duplicate edges collapse.  ``edge_kind`` holds an optional
    style tag per edge (e.g. ``"cross"``, ``"switch"``).
    """

    def __init__(self, vertices: Iterable[Hashable] = (), edges: Iterable[tuple] = ()):
        self._vertices: list = []
        self._index: dict = {}
        self._succ: list[list[int]] = []
        self._edges: dict[tuple[int, int], str | None] = {}
        for v in vertices:
            self.add_vertex(v)
        for u, v in edges:
            self.add_edge(u, v)

    def add_vertex(self, v: Hashable) -> int:
        idx = self._index.get(v)
        if idx is None:
            idx = len(self._vertices)
            self._index[v] = idx
            self._vertices.append(v)
            self._succ.append([])
        return idx

    def add_edge(self, u: Hashable, v: Hashable, kind: str | None = None) -> None:
        iu, iv = self.index(u), self.index(v)
        if (iu, iv) in self._edges:
            return
        self._edges[(iu, iv)] = kind
        self._succ[iu].append(iv)

    def index(self, v: Hashable) -> int:
        try:
            return self._index[v]
        except KeyError:
            raise UnknownVertex(v) from None

    def __contains__(self, v) -> bool:
        return v in self._index

    def __len__(self) -> int:
        return len(self._vertices)

    @property
    def vertices(self) -> tuple:
        return tuple(self._vertices)

    @property
    def edges(self) -> list[tuple]:
        vs = self._vertices
        return [(vs[a], vs[b]) for a, b in self._edges]

    def edge_kind(self, u, v) -> str | None:
        return self._edges[(self.index(u), self.index(v))]

    def has_edge(self, u, v) -> bool:
        return u in self._index and v in self._index and (self._index[u], self._index[v]) in self._edges

    def successors(self, v) -> list:
        return [self._vertices[w] for w in sorted(self._succ[self.index(v)])]

    @property
    def n_edges(self) -> int:
        return len(self._edges)

    def csr(self) -> tuple[np.ndarray, np.ndarray]:
        """Successor lists in CSR form, each row sorted by vertex id."""
        indptr = np.zeros(len(self._vertices) + 1, dtype=np.int64)
        rows = [sorted(s) for s in self._succ]
        indptr[1:] = np.cumsum([len(r) for r in rows])
        indices = np.fromiter((w for r in rows for w in r), dtype=np.int64, count=int(indptr[-1]))
        return indptr, indices

    def subgraph(self, keep: Iterable[Hashable]) -> "Digraph":
        keep_ids = {self.index(v) for v in keep}
        g = Digraph()
        for i, v in enumerate(self._vertices):
            if i in keep_ids:
                g.add_vertex(v)
        for (a, b), kind in self._edges.items():
            if a in keep_ids and b in keep_ids:
                g.add_edge(self._vertices[a], self._vertices[b], kind)
        return g


@dataclass
class BipartiteGraph:
    left: list
    right: list
    edges: list
    weights: dict | None = None

    def __post_init__(self) -> None:
        ls, rs = set(self.left), set(self.right)
        for l, r in self.edges:
            if l not in ls or r not in rs:
                raise UnknownVertex((l, r))

    def csr(self) -> tuple[np.ndarray, np.ndarray]:
        li = {v: i for i, v in enumerate(self.left)}
        ri = {v: i for i, v in enumerate(self.right)}
        rows: list[set] = [set() for _ in self.left]
        for l, r in self.edges:
            rows[li[l]].add(ri[r])
        srt = [sorted(r) for r in rows]
        indptr = np.zeros(len(self.left) + 1, dtype=np.int64)
        indptr[1:] = np.cumsum([len(r) for r in srt])
        indices = np.fromiter((w for r in srt for w in r), dtype=np.int64, count=int(indptr[-1]))
        return indptr, indices


@dataclass(frozen=True)
class Linking:
    paths: tuple = field(default_factory=tuple)

    @property
    def size(self) -> int:
        return len(self.paths)

    def verify(self, g: Digraph, sources=None, sinks=None) -> Verdict:
        errs = []
        seen: set = set()
        for k, p in enumerate(self.paths):
            if not p:
                errs.append(f"path {k} is empty")
                continue
            for a, b in zip(p, p[1:]):
                if not g.has_edge(a, b):
                    errs.append(f"path {k}: ({a}, {b}) is not an edge")
            for v in p:
                if v in seen:
                    errs.append(f"paths not vertex-disjoint at {v}")
                seen.add(v)
            if sources is not None and p[0] not in sources:
                errs.append(f"path {k} does not start in the source set")
            if sinks is not None and p[-1] not in sinks:
                errs.append(f"path {k} does not end in the sink set")
        return Verdict.from_list(errs)


def reachable_from(g: Digraph, sources: Iterable[Hashable]) -> set:
    src = np.array([g.index(s) for s in sources], dtype=np.int64)
    indptr, indices = g.csr()
    mask = kernels.reach_mask(len(g), indptr, indices, src)
    vs = g.vertices
    return {vs[i] for i, flag in enumerate(mask) if flag}


def max_matching(g: BipartiteGraph) -> tuple[int, list[tuple]]:
    indptr, indices = g.csr()
    match = kernels.bipartite_matching(len(g.left), len(g.right), indptr, indices)
    pairs = [(g.left[i], g.right[j]) for i, j in enumerate(match) if j != -1]
    return len(pairs), pairs


def pattern_bipartite(m: SparsityPattern) -> BipartiteGraph:
    """B(M): rows on the left, columns on the right, one edge per nonzero."""
    return BipartiteGraph(list(range(m.rows)), list(range(m.cols)), m.positions())


def generic_rank(m: SparsityPattern) -> int:
    return max_matching(pattern_bipartite(m))[0]


def max_weighted_matching(g: BipartiteGraph) -> tuple[float, list[tuple]]:
    """Maximum-weight matching (weights default to 1).

    Solved as a rectangular assignment problem; pairs that are not edges get
    weight 0 and are dropped from the witness afterwards.
    """
    weights = g.weights or {}
    li = {v: i for i, v in enumerate(g.left)}
    ri = {v: i for i, v in enumerate(g.right)}
    if not g.left or not g.right or not g.edges:
        return 0.0, []
    w = np.zeros((len(g.left), len(g.right)))
    is_edge = np.zeros_like(w, dtype=bool)
    for e in g.edges:
        val = float(weights.get(e, 1.0))
        if val < 0:
            raise NegativeWeight(f"edge {e} has weight {val}")
        i, j = li[e[0]], ri[e[1]]
        w[i, j] = max(w[i, j], val) if is_edge[i, j] else val
        is_edge[i, j] = True
    rows, cols = linear_sum_assignment(w, maximize=True)
    pairs = [(g.left[i], g.right[j]) for i, j in zip(rows, cols) if is_edge[i, j]]
    total = float(sum(w[li[a], ri[b]] for a, b in pairs))
    return total, pairs


def max_disjoint_linking(g: Digraph, sources: Iterable[Hashable],
                         sinks: Iterable[Hashable]) -> tuple[int, Linking]:
    """Maximum set of vertex-disjoint source->sink paths (Menger via max-flow).

    A vertex in both sets may form a length-0 path on its own.
    """
    n = len(g)
    src = np.zeros(n, dtype=np.uint8)
    snk = np.zeros(n, dtype=np.uint8)
    for s in sources:
        src[g.index(s)] = 1
    for t in sinks:
        snk[g.index(t)] = 1
    indptr, indices = g.csr()
    raw = kernels.disjoint_paths(n, indptr, indices, src, snk)
    vs = g.vertices
    link = Linking(tuple(tuple(vs[i] for i in p) for p in raw))
    return link.size, link

