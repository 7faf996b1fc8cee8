"""JSON network format (1-based positions) and the bundled fixture networks.

    {"n": 3, "subsystems": [{"A": [[2, 1]], "B": [[1, 1]]},
                            {"A": [[3, 2]], "B": []}]}

Each entry lists nonzero ``[row, col]`` positions.  A subsystem may carry
``"m"`` (input count, default: largest B column) and ``"label"``.
"""
from __future__ import annotations

import json
from typing import Any

from .model import (ModelError, SparsityPattern, StructuredPair, TemporalNetwork,
                    validate_network)


class NetworkFormatError(ModelError):
    pass


def _positions(raw: Any, what: str) -> list[tuple[int, int]]:
    if not isinstance(raw, list):
        raise NetworkFormatError(f"{what}: expected a list of [row, col] pairs")
    out, seen = [], set()
    for item in raw:
        if (not isinstance(item, (list, tuple)) or len(item) != 2
                or not all(isinstance(x, int) and not isinstance(x, bool) for x in item)):
            raise NetworkFormatError(f"{what}: bad entry {item!r}")
        r, c = item
        if r < 1 or c < 1:
            raise NetworkFormatError(f"{what}: positions are 1-based, got {item!r}")
        if (r, c) in seen:
            raise NetworkFormatError(f"{what}: duplicate position {item!r}")
        seen.add((r, c))
        out.append((r - 1, c - 1))
    return out


def network_from_dict(d: Any) -> TemporalNetwork:
    if not isinstance(d, dict):
        raise NetworkFormatError("network must be a JSON object")
    n = d.get("n")
    if not isinstance(n, int) or isinstance(n, bool) or n < 1:
        raise NetworkFormatError(f"'n' must be a positive integer, got {n!r}")
    subs = d.get("subsystems")
    if not isinstance(subs, list):
        raise NetworkFormatError("'subsystems' must be a list")
    pairs, labels = [], []
    for k, sub in enumerate(subs, start=1):
        if not isinstance(sub, dict):
            raise NetworkFormatError(f"subsystem {k}: expected an object")
        a = _positions(sub.get("A", []), f"subsystem {k} A")
        b = _positions(sub.get("B", []), f"subsystem {k} B")
        m = sub.get("m", max((c + 1 for _, c in b), default=0))
        if not isinstance(m, int) or isinstance(m, bool) or m < 0:
            raise NetworkFormatError(f"subsystem {k}: bad input count {m!r}")
        pairs.append(StructuredPair(SparsityPattern(n, n, frozenset(a)),
                                    SparsityPattern(n, m, frozenset(b))))
        labels.append(sub.get("label"))
    net = TemporalNetwork(n, tuple(pairs), tuple(labels) if any(l is not None for l in labels) else None)
    verdict = validate_network(net)
    if not verdict.ok:
        raise NetworkFormatError("; ".join(verdict.violations))
    return net


def network_to_dict(net: TemporalNetwork) -> dict:
    subs = []
    for k, pair in enumerate(net.pairs):
        sub = {"A": [[r + 1, c + 1] for r, c in pair.a.positions()],
               "B": [[r + 1, c + 1] for r, c in pair.b.positions()],
               "m": pair.m}
        if net.labels is not None and net.labels[k] is not None:
            sub["label"] = net.labels[k]
        subs.append(sub)
    return {"n": net.n, "subsystems": subs}


def loads(text: str) -> TemporalNetwork:
    try:
        d = json.loads(text)
    except json.JSONDecodeError as exc:
        raise NetworkFormatError(f"invalid JSON: {exc}") from None
    return network_from_dict(d)


def dumps(net: TemporalNetwork) -> str:
    return json.dumps(network_to_dict(net), sort_keys=True)


def load(path) -> TemporalNetwork:
    with open(path, encoding="utf-8") as fh:
        return loads(fh.read())


# ---------------------------------------------------------------- fixtures

_G1 = {"A": [[2, 1]], "B": [[1, 1]]}
_G2 = {"A": [[3, 2]], "B": []}

FIXTURES: dict[str, dict] = {
    # two subsystems on 3 nodes: u -> x1 -> x2, then x2 -> x3 with no input
    "ex1": {"n": 3, "subsystems": [_G1, _G2]},
    # the same two patterns used three times as G1, G2, G1
    "eh3": {"n": 3, "subsystems": [_G1, _G2, _G1]},
    # the switched system built from the ex1 patterns
    "sw": {"n": 3, "subsystems": [_G1, _G2]},
    # layered-graph example: u1 -> x1 -> x2 in subsystem 1, u2 -> x4, x2 -> x3 in subsystem 2
    "fig2": {"n": 4, "subsystems": [{"A": [[2, 1]], "B": [[1, 1]]},
                                    {"A": [[3, 2]], "B": [[4, 1]]}]},
    # switching-digraph example: x3 of subsystem 1 is never reached
    "fig3": {"n": 4, "subsystems": [{"A": [[2, 1], [4, 1]], "B": [[1, 1]]},
                                    {"A": [[3, 3], [3, 4], [4, 1]], "B": []}]},
}


def fixture(name: str) -> TemporalNetwork:
    try:
        return network_from_dict(FIXTURES[name])
    except KeyError:
        raise KeyError(f"unknown fixture {name!r}; choose from {sorted(FIXTURES)}") from None
