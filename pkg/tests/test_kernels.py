import os
import subprocess
import sys

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from temporal_reach import kernels

BACKENDS = kernels.backends()
needs_both = pytest.mark.skipif(len(BACKENDS) < 2, reason="compiled backend not built")


@st.composite
def csr_graphs(draw, max_v=12):
    n = draw(st.integers(1, max_v))
    rows = [sorted(draw(st.sets(st.integers(0, n - 1), max_size=4))) for _ in range(n)]
    indptr = np.zeros(n + 1, dtype=np.int64)
    indptr[1:] = np.cumsum([len(r) for r in rows])
    indices = np.array([w for r in rows for w in r], dtype=np.int64)
    return n, indptr, indices


@needs_both
@given(csr_graphs(), st.data())
def test_reach_same(graph, data):
    n, ip, ix = graph
    src = np.array(data.draw(st.lists(st.integers(0, n - 1), max_size=3)), dtype=np.int64)
    outs = [list(b.reach_mask(n, ip, ix, src)) for b in BACKENDS.values()]
    assert outs[0] == outs[1]


@needs_both
@given(csr_graphs(), st.integers(1, 12))
def test_matching_same(graph, n_right):
    n, ip, ix = graph
    ix = ix % n_right
    # re-sort rows after the modulus, dropping duplicates
    rows = [sorted(set(ix[ip[u]:ip[u + 1]].tolist())) for u in range(n)]
    ip2 = np.zeros(n + 1, dtype=np.int64)
    ip2[1:] = np.cumsum([len(r) for r in rows])
    ix2 = np.array([w for r in rows for w in r], dtype=np.int64)
    outs = [list(b.bipartite_matching(n, n_right, ip2, ix2)) for b in BACKENDS.values()]
    assert outs[0] == outs[1]
    matched = [r for r in outs[0] if r != -1]
    assert len(matched) == len(set(matched))


@needs_both
@given(csr_graphs(), st.data())
def test_disjoint_paths_same(graph, data):
    n, ip, ix = graph
    sm = np.array(data.draw(st.lists(st.integers(0, 1), min_size=n, max_size=n)), dtype=np.uint8)
    tm = np.array(data.draw(st.lists(st.integers(0, 1), min_size=n, max_size=n)), dtype=np.uint8)
    outs = [[list(p) for p in b.disjoint_paths(n, ip, ix, sm, tm)] for b in BACKENDS.values()]
    assert outs[0] == outs[1]


def test_empty_inputs():
    for b in BACKENDS.values():
        ip = np.zeros(1, dtype=np.int64)
        ix = np.zeros(0, dtype=np.int64)
        assert list(b.bipartite_matching(0, 0, ip, ix)) == []
        assert list(b.disjoint_paths(0, ip, ix, np.zeros(0, np.uint8), np.zeros(0, np.uint8))) == []


def test_env_forces_pure_backend():
    env = dict(os.environ, TEMPORAL_REACH_PURE="1")
    out = subprocess.run([sys.executable, "-c", "import temporal_reach as t; print(t.BACKEND)"],
                         env=env, capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "python"


def test_compiled_backend_active_when_built():
    if "cython" in BACKENDS and os.environ.get("TEMPORAL_REACH_PURE", "") not in ("1", "true", "yes"):
        assert kernels.BACKEND == "cython"
