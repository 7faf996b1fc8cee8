"""Backend selection for the graph kernels.

The compiled module is used when it imports; set ``TEMPORAL_REACH_PURE=1``
to force the pure-Python fallback.
"""
from __future__ import annotations

import os

from . import _kernels_py

BACKEND = "python"
_impl = _kernels_py

if os.environ.get("TEMPORAL_REACH_PURE", "") not in ("1", "true", "yes"):
    try:
        from . import _kernels_c as _impl  # type: ignore[no-redef]
        BACKEND = "cython"
    except ImportError:
        pass

reach_mask = _impl.reach_mask
bipartite_matching = _impl.bipartite_matching
disjoint_paths = _impl.disjoint_paths


def backends() -> dict:
    """All importable backends, keyed by name."""
    out = {"python": _kernels_py}
    try:
        from . import _kernels_c
        out["cython"] = _kernels_c
    except ImportError:
        pass
    return out
