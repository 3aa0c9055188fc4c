"""Backend selection for the numeric kernels.

The loop kernels in :mod:`sepcheck._kernels` are compiled with numba when it
is importable. Setting ``SEPCHECK_DISABLE_NUMBA=1`` in the environment before
import forces the vectorised numpy path instead.
"""
from __future__ import annotations

import os

_FALSY = {"", "0", "false", "no", "off"}

DISABLE_ENV = "SEPCHECK_DISABLE_NUMBA"


def _env_disabled() -> bool:
    return os.environ.get(DISABLE_ENV, "").strip().lower() not in _FALSY


try:
    import numba as _numba
except ImportError:  # pragma: no cover - exercised only without numba
    _numba = None

NUMBA_AVAILABLE = _numba is not None
USE_NUMBA = NUMBA_AVAILABLE and not _env_disabled()
BACKEND = "numba" if USE_NUMBA else "numpy"


def njit(fn):
    """Compile ``fn`` in nopython mode, or return it untouched without numba."""
    if _numba is None:
        return fn
    return _numba.njit(cache=True, nogil=True, fastmath=False)(fn)
