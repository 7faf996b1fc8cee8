"""Graphviz export.  Output depends only on the graph, so it is byte-stable."""
from __future__ import annotations

from typing import Callable, Iterable

from .bounds_cactus import build_switching_digraph, temporal_cactus_lower_bound
from .bounds_cdg import build_cdg, cdg_upper_bound
from .bounds_mdg import build_mdg, mdg_upper_bound
from .graphkit import Digraph
from .model import TemporalNetwork

DASHED = frozenset({"cross", "switch"})


def _quote(s: str) -> str:
    return '"' + s.replace("\\", "\\\\").replace('"', '\\"') + '"'


def to_dot(g: Digraph, rank_of: Callable[[object], int], name: str = "G",
           bold_edges: Iterable[tuple] = ()) -> str:
    """Left-to-right layout, one ``rank=same`` group per rank value.

    Edges tagged ``cross`` or ``switch`` are dashed; ``bold_edges`` (e.g. a
    linking witness) are drawn bold.
    """
    ids = {v: f"v{i}" for i, v in enumerate(g.vertices)}
    bold = set(bold_edges)
    lines = [f"digraph {name} {{", "  rankdir=LR;"]
    groups: dict[int, list] = {}
    for v in g.vertices:
        groups.setdefault(rank_of(v), []).append(v)
    for r in sorted(groups):
        lines.append("  { rank=same;")
        for v in groups[r]:
            shape = "box" if getattr(v, "kind", None) == "u" else "circle"
            label = v.label() if hasattr(v, "label") else str(v)
            lines.append(f"    {ids[v]} [label={_quote(label)}, shape={shape}];")
        lines.append("  }")
    for a, b in g.edges:
        attrs = []
        if g.edge_kind(a, b) in DASHED:
            attrs.append("style=dashed")
        if (a, b) in bold:
            attrs.append("penwidth=2.5")
        tail = f" [{', '.join(attrs)}]" if attrs else ""
        lines.append(f"  {ids[a]} -> {ids[b]}{tail};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def _path_edges(paths) -> list[tuple]:
    return [e for p in paths for e in zip(p, p[1:])]


def cdg_dot(net: TemporalNetwork, witness: bool = True) -> str:
    cdg = build_cdg(net)
    bold = _path_edges(cdg_upper_bound(net).witness.paths) if witness else ()
    return to_dot(cdg.graph, lambda v: (v.sub - 1) * (net.n + 1) + v.layer, "CDG", bold)


def mdg_dot(net: TemporalNetwork, witness: bool = True) -> str:
    mdg = build_mdg(net)
    bold = _path_edges(mdg_upper_bound(net)[1].paths) if witness else ()
    return to_dot(mdg.graph, lambda v: mdg.layers - v.layer, "MDG", bold)


def gsw_dot(net: TemporalNetwork, witness: bool = True, restarts: int = 8, seed: int = 42) -> str:
    sw = build_switching_digraph(net)
    bold = []
    if witness:
        _, cactus = temporal_cactus_lower_bound(net, restarts, seed)
        bold = _path_edges(cactus.stems) + _path_edges(c + c[:1] for c in cactus.cycles)
    return to_dot(sw.pruned, lambda v: v.sub, "GSW", bold)


EXPORTERS = {"cdg": cdg_dot, "mdg": mdg_dot, "gsw": gsw_dot}
