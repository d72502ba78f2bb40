"""Hot-kernel dispatch: numba JIT by default, vectorized numpy fallback.

The backend is fixed at import time from the EQRANK_NUMBA environment
variable: "0"/"false"/"off" forces the numpy path, "1"/"true"/"on"
requires numba (import error if missing), anything else (the default)
uses numba when importable. Both backends are bit-identical; see
benchmarks/bench_backends.py for a speed comparison.
"""

from __future__ import annotations

import os

_FORCE_OFF = {"0", "false", "no", "off"}
_FORCE_ON = {"1", "true", "yes", "on"}


def _select_backend():
    flag = os.environ.get("EQRANK_NUMBA", "auto").strip().lower()
    if flag in _FORCE_OFF:
        from . import _backend_numpy as impl

        return impl, "numpy"
    if flag in _FORCE_ON:
        from . import _backend_numba as impl

        return impl, "numba"
    try:
        from . import _backend_numba as impl

        return impl, "numba"
    except ImportError:
        from . import _backend_numpy as impl

        return impl, "numpy"


_impl, _backend = _select_backend()

cocitation_edge_weights = _impl.cocitation_edge_weights
segment_argmax = _impl.segment_argmax
functional_roots = _impl.functional_roots
weak_component_labels = _impl.weak_component_labels


def backend_name() -> str:
    return _backend


def set_threads(n: int) -> None:
    """Pin the worker count for parallel kernels; n=0 keeps the default."""
    if n <= 0 or _backend != "numba":
        return
    import numba

    numba.set_num_threads(min(n, numba.config.NUMBA_NUM_THREADS))
