"""Time the pure-Python and compiled graph kernels on the same inputs.

    python3 benchmarks/bench_kernels.py [--repeat 5] [--sizes 200,1000,4000]

Kernel timings call each backend module directly.  The end-to-end rows run
one bound computation in a subprocess per backend (TEMPORAL_REACH_PURE
selects the fallback at import).
"""
from __future__ import annotations

import argparse
import os
import subprocess
import sys
import timeit

import numpy as np

from temporal_reach import kernels

E2E = """
import time
import numpy as np
from temporal_reach.bounds_cdg import cdg_upper_bound
from temporal_reach.bounds_mdg import mdg_upper_bound
from temporal_reach.model import random_network
net = random_network({n}, {N}, np.random.default_rng(0), m=1, density=0.3)
t = time.perf_counter()
cdg_upper_bound(net); mdg_upper_bound(net)
print(time.perf_counter() - t)
"""


def random_csr(n, deg, rng, n_right=None):
    n_right = n if n_right is None else n_right
    rows = [np.unique(rng.integers(0, n_right, size=rng.integers(0, 2 * deg + 1))) for _ in range(n)]
    indptr = np.zeros(n + 1, dtype=np.int64)
    indptr[1:] = np.cumsum([len(r) for r in rows])
    indices = np.concatenate(rows).astype(np.int64) if n else np.zeros(0, np.int64)
    return indptr, indices


def layered_csr(layers, width, deg, rng):
    # edges only go to the next layer, like the unrolled graphs the bounds build
    n = layers * width
    rows = []
    for v in range(n):
        layer = v // width
        if layer + 1 < layers:
            base = (layer + 1) * width
            rows.append(np.unique(base + rng.integers(0, width, size=deg)))
        else:
            rows.append(np.zeros(0, np.int64))
    indptr = np.zeros(n + 1, dtype=np.int64)
    indptr[1:] = np.cumsum([len(r) for r in rows])
    return n, indptr, np.concatenate(rows).astype(np.int64)


def best_of(fn, repeat):
    return min(timeit.repeat(fn, number=1, repeat=repeat))


def kernel_rows(sizes, repeat):
    rng = np.random.default_rng(1)
    impls = kernels.backends()
    rows = []
    for n in sizes:
        ip, ix = random_csr(n, 3, rng)
        src = np.arange(min(5, n), dtype=np.int64)
        cases = {"reach_mask": lambda b: b.reach_mask(n, ip, ix, src),
                 "bipartite_matching": lambda b: b.bipartite_matching(n, n, ip, ix)}
        width = max(2, int(n ** 0.5))
        ln, lip, lix = layered_csr(max(2, n // width), width, 2, rng)
        sm = np.zeros(ln, np.uint8)
        tm = np.zeros(ln, np.uint8)
        sm[:width] = 1
        tm[-width:] = 1
        cases["disjoint_paths"] = lambda b: b.disjoint_paths(ln, lip, lix, sm, tm)
        for name, fn in cases.items():
            times = {k: best_of(lambda: fn(b), repeat) for k, b in impls.items()}
            rows.append((name, n, times))
    return rows


def e2e_rows(cases):
    rows = []
    for n, N in cases:
        times = {}
        for name, pure in (("python", "1"), ("cython", "0")):
            if name not in kernels.backends():
                continue
            env = dict(os.environ, TEMPORAL_REACH_PURE=pure)
            out = subprocess.run([sys.executable, "-c", E2E.format(n=n, N=N)],
                                 env=env, capture_output=True, text=True, check=True)
            times[name] = float(out.stdout.strip())
        rows.append((f"bounds n={n} N={N}", n, times))
    return rows


def show(rows):
    print(f"{'case':<24}{'size':>7}{'python (s)':>14}{'cython (s)':>14}{'speedup':>10}")
    for name, n, t in rows:
        py, cy = t.get("python"), t.get("cython")
        sp = f"{py / cy:9.1f}x" if py and cy else "       n/a"
        cys = f"{cy:14.5f}" if cy is not None else f"{'n/a':>14}"
        print(f"{name:<24}{n:>7}{py:14.5f}{cys}{sp}")


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--sizes", default="200,1000,4000")
    ap.add_argument("--no-e2e", action="store_true")
    args = ap.parse_args(argv)
    if "cython" not in kernels.backends():
        print("compiled backend not built; only the fallback is timed", file=sys.stderr)
    rows = kernel_rows([int(s) for s in args.sizes.split(",")], args.repeat)
    if not args.no_e2e:
        rows += e2e_rows([(6, 3), (8, 4)])
    show(rows)


if __name__ == "__main__":
    main()
