"""Selects between numba-compiled kernels and their plain Python sources.

Set ``POLYUNI_NO_NUMBA=1`` to run every kernel through the interpreter.
"""

from __future__ import annotations

import os

try:
    import numba
except ImportError:  # pragma: no cover - numba is a declared dependency
    numba = None

NUMBA_AVAILABLE = numba is not None
USE_NUMBA = NUMBA_AVAILABLE and os.environ.get("POLYUNI_NO_NUMBA", "0") in ("", "0")


def kernel(fn):
    """Compile ``fn`` with ``numba.njit`` when enabled; keep the source as ``py_func``."""
    if USE_NUMBA:
        return numba.njit(cache=True, nogil=True)(fn)
    fn.py_func = fn
    return fn


def compiled(fn):
    """Force-compile a kernel regardless of the env flag (used by benchmarks)."""
    if not NUMBA_AVAILABLE:
        raise RuntimeError("numba is not installed")
    src = getattr(fn, "py_func", fn)
    return numba.njit(cache=True, nogil=True)(src)
