"""Monte Carlo measurement of generic dimensions.

Every quantity is measured on random realizations (see
:func:`temporal_reach.model.sample_realization`) and reported as the maximum
numerical rank over the trials; per-trial ranks are kept so that degenerate
samples stay visible.
"""
from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field
from typing import Sequence

import numpy as np
import scipy.linalg

from .model import Realization, TemporalNetwork, sample_realization

DEFAULT_TOL = 1e-8


class NonSquare(ValueError):
    pass


class NonConformable(ValueError):
    pass


def matrix_exponential(a, h: float = 1.0) -> np.ndarray:
    """``exp(a * h)``, delegating to :func:`scipy.linalg.expm` after shape checks."""
    A = np.array(a, dtype=float) * float(h)
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise NonSquare(f"expected a square matrix, got shape {A.shape}")
    if not np.all(np.isfinite(A)):
        raise ValueError("matrix has non-finite entries")
    if A.shape[0] == 0:
        return np.zeros((0, 0))
    return scipy.linalg.expm(A)


def controllability_matrix(a, b) -> np.ndarray:
    """``[B, AB, ..., A^(n-1) B]``."""
    A = np.asarray(a, dtype=float)
    B = np.asarray(b, dtype=float)
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise NonSquare(f"A has shape {A.shape}")
    n = A.shape[0]
    if B.ndim != 2 or B.shape[0] != n:
        raise NonConformable(f"B has shape {B.shape}, expected {n} rows")
    blocks = [B]
    for _ in range(n - 1):
        blocks.append(A @ blocks[-1])
    return np.hstack(blocks) if blocks else np.zeros((n, 0))


def numeric_rank(m, tol: float = DEFAULT_TOL) -> int:
    """Number of singular values above ``tol`` times the largest one."""
    M = np.asarray(m, dtype=float)
    if M.size == 0:
        return 0
    s = np.linalg.svd(M, compute_uv=False)
    if s[0] == 0.0:
        return 0
    return int(np.sum(s > tol * s[0]))


def _equilibrate(M: np.ndarray) -> np.ndarray:
    # unit-norm columns; exact zero columns stay zero (they are structural zeros)
    norms = np.linalg.norm(M, axis=0)
    keep = norms > 0
    return M[:, keep] / norms[keep]


def measured_rank(M: np.ndarray, tol: float = DEFAULT_TOL) -> int:
    """Rank of a column-equilibrated copy of ``M``."""
    return numeric_rank(_equilibrate(np.asarray(M, dtype=float)), tol)


def orth_basis(M: np.ndarray, tol: float = DEFAULT_TOL) -> np.ndarray:
    """Orthonormal basis of the column space of ``M`` (column-equilibrated first)."""
    M = np.asarray(M, dtype=float)
    E = _equilibrate(M)
    n = M.shape[0]
    if E.shape[1] == 0:
        return np.zeros((n, 0))
    U, s, _ = np.linalg.svd(E, full_matrices=False)
    r = int(np.sum(s > tol * s[0])) if s[0] > 0 else 0
    return U[:, :r]


def _orth_abs(M: np.ndarray, cutoff: float) -> np.ndarray:
    n = M.shape[0]
    if M.shape[1] == 0 or cutoff <= 0:
        return np.zeros((n, 0))
    U, s, _ = np.linalg.svd(M, full_matrices=False)
    return U[:, : int(np.sum(s > cutoff))]


def trial_seeds(seed: int, trials: int) -> list[int]:
    """Independent per-trial seeds derived from a master seed."""
    children = np.random.SeedSequence(seed).spawn(trials)
    return [int(c.generate_state(1)[0]) for c in children]


@dataclass
class RankReport:
    quantity: str
    value: int
    trials: int
    per_trial: list = field(default_factory=list)
    seed: int = 0
    tol: float = DEFAULT_TOL

    def to_dict(self) -> dict:
        return asdict(self)

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)

    @classmethod
    def from_dict(cls, d: dict) -> "RankReport":
        return cls(d["quantity"], int(d["value"]), int(d["trials"]),
                   list(d["per_trial"]), int(d["seed"]), float(d["tol"]))


# ---------------------------------------------------------------- matrices

def reachability_matrix(real: Realization, path: Sequence[int] | None = None,
                        durations: Sequence[float] | None = None) -> np.ndarray:
    """``[C_l, e^{A_l h_l} C_{l-1}, ..., e^{A_l h_l}...e^{A_2 h_2} C_1]`` along ``path``.

    ``path`` lists 0-based subsystem indices in temporal order (default: all
    subsystems in order).  ``durations`` are per path position; by default
    position m uses the realization's duration of subsystem ``path[m]``.
    """
    N = real.N
    path = list(range(N)) if path is None else list(path)
    for i in path:
        if not 0 <= i < N:
            raise IndexError(f"subsystem index {i} outside 0..{N - 1}")
    if durations is None:
        durations = [real.durations[i] for i in path]
    n = real.a_mats[0].shape[0]
    blocks = []
    prop = np.eye(n)
    for pos in range(len(path) - 1, -1, -1):
        i = path[pos]
        blocks.append(prop @ controllability_matrix(real.a_mats[i], real.b_mats[i]))
        prop = prop @ matrix_exponential(real.a_mats[i], durations[pos])
    return np.hstack(blocks)


def clow_matrix(real: Realization) -> np.ndarray:
    """``[C_N, ..., C_1]`` (all durations set to zero)."""
    return np.hstack([controllability_matrix(a, b)
                      for a, b in zip(real.a_mats[::-1], real.b_mats[::-1])])


def controllable_matrix(real: Realization) -> np.ndarray:
    """``[C_1, e^{-A_1 h_1} C_2, ..., e^{-A_1 h_1}...e^{-A_{N-1} h_{N-1}} C_N]``."""
    n = real.a_mats[0].shape[0]
    blocks = []
    prop = np.eye(n)
    for i in range(real.N):
        blocks.append(prop @ controllability_matrix(real.a_mats[i], real.b_mats[i]))
        prop = prop @ matrix_exponential(real.a_mats[i], -real.durations[i])
    return np.hstack(blocks)


def omegabar_basis(real: Realization, tol: float = DEFAULT_TOL) -> np.ndarray:
    """Orthonormal basis of the minimal subspace containing the overall reachable set.

    Block j starts as B_j; each step replaces it with A_j times the stacked
    blocks 1..j of the previous step.  After N(n-1) steps the union of all
    blocks spans the subspace.  Blocks are kept as orthonormal bases of their
    column spaces, since only spans matter.

    Products ``A_j Q`` with orthonormal ``Q`` are truncated at an absolute
    cutoff ``tol * ||A_j||``: rescaling their columns would blow roundoff
    residue up into spurious directions.
    """
    N = real.N
    n = real.a_mats[0].shape[0]
    gam = [orth_basis(b, tol) for b in real.b_mats]
    acc = list(gam)
    scale = [np.linalg.norm(a, 2) if a.size else 0.0 for a in real.a_mats]
    steps = N * (n - 1)
    for _ in range(steps):
        nxt = []
        for j in range(N):
            stacked = np.hstack(gam[: j + 1])
            nxt.append(_orth_abs(real.a_mats[j] @ stacked, tol * scale[j]))
        gam = nxt
        acc.extend(gam)
        if all(g.shape[1] == 0 for g in gam):
            break
    return orth_basis(np.hstack(acc), tol)


def reachable_subspace_basis(real: Realization, path: Sequence[int] | None = None,
                             durations: Sequence[float] | None = None,
                             tol: float = DEFAULT_TOL) -> np.ndarray:
    return orth_basis(reachability_matrix(real, path, durations), tol)


# ----------------------------------------------------------------- oracles

def _realizations(net: TemporalNetwork, trials: int, seed: int):
    if trials < 1:
        raise ValueError("trials must be >= 1")
    for s in trial_seeds(seed, trials):
        yield sample_realization(net, s)


def _report(name: str, ranks: list[int], seed: int, tol: float) -> RankReport:
    return RankReport(name, max(ranks), len(ranks), ranks, seed, tol)


def oracle_gdim_omega_h(net: TemporalNetwork, trials: int = 5, seed: int = 42,
                        tol: float = DEFAULT_TOL) -> RankReport:
    ranks = [measured_rank(reachability_matrix(r), tol) for r in _realizations(net, trials, seed)]
    return _report("gdim_omega_h", ranks, seed, tol)


def oracle_gdim_clow(net: TemporalNetwork, trials: int = 5, seed: int = 42,
                     tol: float = DEFAULT_TOL) -> RankReport:
    ranks = [measured_rank(clow_matrix(r), tol) for r in _realizations(net, trials, seed)]
    return _report("grank_clow", ranks, seed, tol)


def oracle_gdim_omegabar(net: TemporalNetwork, trials: int = 5, seed: int = 42,
                         tol: float = DEFAULT_TOL) -> RankReport:
    ranks = [omegabar_basis(r, tol).shape[1] for r in _realizations(net, trials, seed)]
    return _report("gdim_omegabar", ranks, seed, tol)


def oracle_target_rank(net: TemporalNetwork, target: Sequence[int], subsystem: int = 0,
                       trials: int = 5, seed: int = 42, tol: float = DEFAULT_TOL) -> RankReport:
    """Max numerical rank of the rows ``target`` of one subsystem's controllability matrix."""
    rows = sorted(target)
    ranks = []
    for r in _realizations(net, trials, seed):
        C = controllability_matrix(r.a_mats[subsystem], r.b_mats[subsystem])
        ranks.append(measured_rank(C[rows, :], tol))
    return _report("grank_target_rows", ranks, seed, tol)


@dataclass
class EzzineHaddadReport:
    per_trial: list
    differs: bool
    N: int
    seed: int
    tol: float

    @property
    def omega_h(self) -> int:
        return max(c for c, _ in self.per_trial)

    @property
    def clow(self) -> int:
        return max(l for _, l in self.per_trial)

    @property
    def verdict(self) -> str:
        if not self.differs:
            return "equal"
        return f"differs (N={self.N} counterexample)"

    def to_dict(self) -> dict:
        return {"rank_C": self.omega_h, "rank_C_low": self.clow,
                "per_trial": [list(p) for p in self.per_trial],
                "differs": self.differs, "verdict": self.verdict,
                "seed": self.seed, "tol": self.tol}


def ezzine_haddad_report(net: TemporalNetwork, trials: int = 5, seed: int = 42,
                         tol: float = DEFAULT_TOL) -> EzzineHaddadReport:
    """Compare rank of the reachability matrix with the zero-duration one, trial by trial."""
    pairs = []
    for r in _realizations(net, trials, seed):
        pairs.append((measured_rank(reachability_matrix(r), tol), measured_rank(clow_matrix(r), tol)))
    differs = any(c != l for c, l in pairs)
    return EzzineHaddadReport(pairs, differs, net.N, seed, tol)
