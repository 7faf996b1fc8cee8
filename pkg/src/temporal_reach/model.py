"""Temporal networks as ordered sequences of structured (A_i, B_i) pairs.

Indices are 0-based everywhere in the Python API.  The JSON network format
(see :mod:`temporal_reach.netjson`) is 1-based.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np


class ModelError(ValueError):
    pass


class NotDedicated(ModelError):
    """An input column does not actuate exactly one state."""


class BadN(ModelError):
    """Subsystem count outside the admissible range."""


@dataclass(frozen=True)
class SparsityPattern:
    """Zero/nonzero skeleton of a ``rows x cols`` matrix."""

    rows: int
    cols: int
    nonzeros: frozenset = field(default_factory=frozenset)

    def __post_init__(self) -> None:
        object.__setattr__(self, "nonzeros", frozenset((int(r), int(c)) for r, c in self.nonzeros))

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "SparsityPattern":
        return cls(rows, cols, frozenset())

    @classmethod
    def identity(cls, n: int) -> "SparsityPattern":
        return cls(n, n, frozenset((i, i) for i in range(n)))

    @classmethod
    def identity_columns(cls, n: int, support: Iterable[int]) -> "SparsityPattern":
        """Columns of the n x n identity indexed by ``support`` (in order)."""
        support = list(support)
        return cls(n, len(support), frozenset((r, j) for j, r in enumerate(support)))

    @classmethod
    def from_array(cls, arr) -> "SparsityPattern":
        arr = np.asarray(arr)
        if arr.ndim != 2:
            raise ModelError("pattern array must be 2-D")
        rows, cols = np.nonzero(arr)
        return cls(arr.shape[0], arr.shape[1], frozenset(zip(rows.tolist(), cols.tolist())))

    @property
    def nnz(self) -> int:
        return len(self.nonzeros)

    def positions(self) -> list[tuple[int, int]]:
        """Nonzero positions in row-major order."""
        return sorted(self.nonzeros)

    def out_of_bounds(self) -> list[tuple[int, int]]:
        return sorted((r, c) for r, c in self.nonzeros
                      if not (0 <= r < self.rows and 0 <= c < self.cols))

    def to_array(self) -> np.ndarray:
        out = np.zeros((self.rows, self.cols), dtype=bool)
        for r, c in self.nonzeros:
            out[r, c] = True
        return out

    def column_support(self, j: int) -> list[int]:
        return sorted(r for r, c in self.nonzeros if c == j)

    def row_support(self, i: int) -> list[int]:
        return sorted(c for r, c in self.nonzeros if r == i)

    def hstack(self, other: "SparsityPattern") -> "SparsityPattern":
        if other.rows != self.rows:
            raise ModelError("row counts differ")
        shifted = {(r, c + self.cols) for r, c in other.nonzeros}
        return SparsityPattern(self.rows, self.cols + other.cols, self.nonzeros | shifted)

    def without(self, pos: tuple[int, int]) -> "SparsityPattern":
        return SparsityPattern(self.rows, self.cols, self.nonzeros - {pos})

    def restrict(self, rows: Iterable[int] | None = None,
                 cols: Iterable[int] | None = None) -> "SparsityPattern":
        """Zero out every row not in ``rows`` and column not in ``cols`` (shape kept)."""
        rs = set(range(self.rows)) if rows is None else set(rows)
        cs = set(range(self.cols)) if cols is None else set(cols)
        return SparsityPattern(self.rows, self.cols,
                               frozenset((r, c) for r, c in self.nonzeros if r in rs and c in cs))


@dataclass(frozen=True)
class StructuredPair:
    a: SparsityPattern
    b: SparsityPattern

    @property
    def n(self) -> int:
        return self.a.rows

    @property
    def m(self) -> int:
        return self.b.cols

    @classmethod
    def from_arrays(cls, a, b) -> "StructuredPair":
        a = np.asarray(a)
        b = np.asarray(b)
        if b.size == 0:
            b = np.zeros((a.shape[0], 0))
        return cls(SparsityPattern.from_array(a), SparsityPattern.from_array(b))


@dataclass(frozen=True)
class TemporalNetwork:
    """Ordered subsystems; ``pairs[0]`` is active first."""

    n: int
    pairs: tuple
    labels: tuple | None = None

    def __post_init__(self) -> None:
        object.__setattr__(self, "pairs", tuple(self.pairs))
        if self.labels is not None:
            object.__setattr__(self, "labels", tuple(self.labels))

    @property
    def N(self) -> int:
        return len(self.pairs)

    @property
    def m(self) -> tuple[int, ...]:
        return tuple(p.m for p in self.pairs)

    def subnetwork(self, order: Sequence[int]) -> "TemporalNetwork":
        """Network whose k-th subsystem is an independent copy of ``pairs[order[k]]``."""
        for i in order:
            if not 0 <= i < self.N:
                raise IndexError(f"subsystem index {i} outside 0..{self.N - 1}")
        labels = None if self.labels is None else tuple(self.labels[i] for i in order)
        return TemporalNetwork(self.n, tuple(self.pairs[i] for i in order), labels)


@dataclass(frozen=True)
class TargetSpec:
    target: frozenset

    def __post_init__(self) -> None:
        object.__setattr__(self, "target", frozenset(int(t) for t in self.target))
        if not self.target:
            raise ModelError("target set must be nonempty")

    def check(self, n: int) -> None:
        bad = sorted(t for t in self.target if not 0 <= t < n)
        if bad:
            raise ModelError(f"target indices {bad} outside 0..{n - 1}")


@dataclass(frozen=True)
class Verdict:
    ok: bool
    violations: tuple = ()

    @classmethod
    def from_list(cls, violations: Sequence[str]) -> "Verdict":
        return cls(not violations, tuple(violations))


@dataclass(frozen=True, eq=False)
class Realization:
    a_mats: tuple
    b_mats: tuple
    durations: np.ndarray
    phi_seed: int | None = None

    @property
    def N(self) -> int:
        return len(self.a_mats)


def validate_network(net: TemporalNetwork) -> Verdict:
    errs: list[str] = []
    if net.N < 1:
        errs.append("N ≥ 1 required")
    if net.n < 1:
        errs.append(f"state dimension must be positive, got {net.n}")
    for k, pair in enumerate(net.pairs, start=1):
        a, b = pair.a, pair.b
        if a.rows != a.cols:
            errs.append(f"pair {k}: A is not square ({a.rows}×{a.cols})")
        if a.rows != net.n:
            errs.append(f"pair {k}: state dim {a.rows} ≠ {net.n}")
        if b.rows != a.rows:
            errs.append(f"pair {k}: B has {b.rows} rows ≠ {a.rows}")
        if b.cols < 0:
            errs.append(f"pair {k}: negative input count")
        for name, pat in (("A", a), ("B", b)):
            for r, c in pat.out_of_bounds():
                errs.append(f"pair {k}: {name} nonzero ({r + 1},{c + 1}) out of bounds")
    if net.labels is not None and len(net.labels) != net.N:
        errs.append(f"{len(net.labels)} labels for {net.N} subsystems")
    return Verdict.from_list(errs)


def reverse_temporal_order(net: TemporalNetwork) -> TemporalNetwork:
    labels = None if net.labels is None else net.labels[::-1]
    return TemporalNetwork(net.n, net.pairs[::-1], labels)


def is_dedicated(pattern: SparsityPattern) -> bool:
    counts = [0] * pattern.cols
    for _, c in pattern.nonzeros:
        counts[c] += 1
    return all(k == 1 for k in counts)


def augment_dedicated_inputs(net: TemporalNetwork) -> TemporalNetwork:
    """Replace B_k by [B_1, ..., B_k] (fresh copies) for a dedicated-input network.

    Since patterns carry no values, stacking the earlier input patterns is
    exactly the structure with independent new nonzeros.
    """
    for k, pair in enumerate(net.pairs, start=1):
        if not is_dedicated(pair.b):
            raise NotDedicated(f"pair {k}: B is not a dedicated-input pattern")
    pairs = []
    acc = SparsityPattern.zeros(net.n, 0)
    for pair in net.pairs:
        acc = acc.hstack(pair.b)
        pairs.append(StructuredPair(pair.a, acc))
    return TemporalNetwork(net.n, tuple(pairs), net.labels)


def _signed_uniform(rng: np.random.Generator, size: int, lo: float, hi: float) -> np.ndarray:
    mags = rng.uniform(lo, hi, size=size)
    signs = rng.choice(np.array([-1.0, 1.0]), size=size)
    return mags * signs


def sample_realization(net: TemporalNetwork, seed: int,
                       value_range: tuple[float, float] = (0.1, 1.0),
                       duration_range: tuple[float, float] = (0.5, 1.5)) -> Realization:
    """Draw a numeric realization of ``net``.

    Nonzero magnitudes are uniform on ``value_range`` with a random sign, so
    values avoid a band around zero.  Durations are uniform on
    ``duration_range`` (negative values allowed).  Entries are drawn pattern
    by pattern (A then B) in row-major order, so output is fully determined
    by ``seed``.
    """
    lo, hi = value_range
    if not 0 <= lo < hi:
        raise ModelError(f"bad value_range {value_range}")
    dlo, dhi = duration_range
    if not dlo < dhi:
        raise ModelError(f"bad duration_range {duration_range}")
    rng = np.random.default_rng(seed)
    a_mats, b_mats = [], []
    for pair in net.pairs:
        for pat, out in ((pair.a, a_mats), (pair.b, b_mats)):
            mat = np.zeros((pat.rows, pat.cols))
            pos = pat.positions()
            if pos:
                r, c = zip(*pos)
                mat[list(r), list(c)] = _signed_uniform(rng, len(pos), lo, hi)
            out.append(mat)
    durations = rng.uniform(dlo, dhi, size=net.N)
    return Realization(tuple(a_mats), tuple(b_mats), durations, seed)


def contiguous_partition(items: Sequence[int], parts: int) -> list[list[int]]:
    """Split ``items`` into ``parts`` contiguous runs, sizes differing by at most one."""
    q, r = divmod(len(items), parts)
    out, start = [], 0
    for k in range(parts):
        size = q + (1 if k < r else 0)
        out.append(list(items[start:start + size]))
        start += size
    return out


def stcp_embedding(pair: StructuredPair, target: TargetSpec | Iterable[int], N: int) -> TemporalNetwork:
    """Temporal network used to reduce target controllability of ``pair``.

    Subsystem 1 is ``pair``; subsystems 2..N have A = 0 and B equal to the
    identity columns of one contiguous run of the complement of the target.
    """
    if not isinstance(target, TargetSpec):
        target = TargetSpec(frozenset(target))
    n = pair.n
    target.check(n)
    rest = [i for i in range(n) if i not in target.target]
    if not 2 <= N <= len(rest) + 1:
        raise BadN(f"N={N} outside 2..{len(rest) + 1} for |T|={len(target.target)}, n={n}")
    pairs = [pair]
    for run in contiguous_partition(rest, N - 1):
        pairs.append(StructuredPair(SparsityPattern.zeros(n, n),
                                    SparsityPattern.identity_columns(n, run)))
    return TemporalNetwork(n, tuple(pairs))


def random_pair(n: int, m: int, rng: np.random.Generator, density: float = 0.35,
                b_density: float | None = None) -> StructuredPair:
    """Random structured pair, each entry nonzero independently."""
    bd = density if b_density is None else b_density
    a = rng.random((n, n)) < density
    b = rng.random((n, m)) < bd
    return StructuredPair(SparsityPattern.from_array(a), SparsityPattern.from_array(b.reshape(n, m)))


def random_network(n: int, N: int, rng: np.random.Generator, m: int | Sequence[int] = 1,
                   density: float = 0.35, b_density: float | None = None) -> TemporalNetwork:
    ms = [m] * N if isinstance(m, int) else list(m)
    return TemporalNetwork(n, tuple(random_pair(n, mi, rng, density, b_density) for mi in ms))
