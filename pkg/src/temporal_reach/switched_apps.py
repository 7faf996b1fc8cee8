"""Switched-system applications: shortest admissible switching paths and permutation lower bounds."""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field

import numpy as np

from .bounds_cdg import crp_check
from .model import TemporalNetwork
from .numeric_oracle import DEFAULT_TOL, oracle_gdim_omegabar


@dataclass
class PathSearch:
    path: tuple | None
    per_length: list = field(default_factory=list)  # best linking size for lengths 1, 2, ...

    @property
    def length(self) -> int | None:
        return None if self.path is None else len(self.path)

    def to_dict(self) -> dict:
        return {"min_length_lower_bound": self.length,
                "witness_path": None if self.path is None else [i + 1 for i in self.path],
                "per_length": list(self.per_length)}


def crp_min_length_search(net: TemporalNetwork, l_max: int) -> PathSearch:
    """Shortest switching path (0-based indices) passing the linking test.

    Lengths are tried in increasing order and paths lexicographically within
    a length.  The test is only necessary, so the length found is a lower
    bound on the shortest path that actually reaches the whole space.
    """
    if l_max < 1:
        raise ValueError("l_max must be >= 1")
    per_length = []
    for length in range(1, l_max + 1):
        best = 0
        for path in itertools.product(range(net.N), repeat=length):
            ok, size = crp_check(net, path)
            best = max(best, size)
            if ok:
                per_length.append(best)
                return PathSearch(tuple(path), per_length)
        per_length.append(best)
    return PathSearch(None, per_length)


@dataclass
class SwitchedBound:
    bound: int
    permutation: tuple
    evaluated: int

    def to_dict(self) -> dict:
        return {"switched_dim_lower_bound": self.bound,
                "best_permutation": [i + 1 for i in self.permutation],
                "evaluated": self.evaluated}


def _permutations(N: int, budget: int, seed: int):
    if math.factorial(N) <= budget:
        yield from itertools.permutations(range(N))
        return
    rng = np.random.default_rng(seed)
    for _ in range(budget):
        yield tuple(int(i) for i in rng.permutation(N))


def switched_dim_lower_bound(net: TemporalNetwork, budget: int = 720, seed: int = 42,
                             trials: int = 5, tol: float = DEFAULT_TOL) -> SwitchedBound:
    """Max over subsystem orderings of gdim of the overall reachable subspace.

    All N! orderings when they fit in ``budget``, otherwise ``budget`` seeded
    random ones (a prefix of one fixed stream, so a larger budget evaluates a
    superset).  Every ordering is measured with the same oracle seed.
    """
    if budget < 1:
        raise ValueError("budget must be >= 1")
    best, best_perm, count = -1, (), 0
    for perm in _permutations(net.N, budget, seed):
        count += 1
        val = oracle_gdim_omegabar(net.subnetwork(perm), trials, seed, tol).value
        if val > best:
            best, best_perm = val, perm
        if best == net.n:
            break
    return SwitchedBound(best, best_perm, count)
