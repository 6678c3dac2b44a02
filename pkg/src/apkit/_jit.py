"""Optional numba acceleration.

Kernels are written once in a numba-compatible subset of Python and wrapped
with :func:`kernel`.  Set ``APKIT_NUMBA=0`` to run every kernel as plain
Python (useful for debugging and for checking the two paths agree).
"""

from __future__ import annotations

import os
import warnings

_DISABLED = os.environ.get("APKIT_NUMBA", "1").strip().lower() in ("0", "false", "no", "off")

try:
    if _DISABLED:
        raise ImportError
    import numba
except ImportError:  # pragma: no cover - depends on environment
    numba = None
    if not _DISABLED:
        warnings.warn("numba not found, kernels run as plain Python")

USE_NUMBA = numba is not None


def kernel(fn):
    if USE_NUMBA:
        return numba.njit(cache=True, nogil=True)(fn)
    return fn


def python_impl(fn):
    """The un-jitted function behind a kernel."""
    return getattr(fn, "py_func", fn)
