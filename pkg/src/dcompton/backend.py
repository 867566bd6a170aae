"""Kernel backend selection.

The hot numeric kernels exist in two functionally identical variants:
a numba-jitted one (kernels_numba) and a vectorized pure-numpy one
(kernels_numpy).  Selection, checked once at import time:

  DCOMPTON_BACKEND=numba   force numba (ImportError if unavailable)
  DCOMPTON_BACKEND=numpy   force the pure-numpy fallback
  unset                    numba when importable, else numpy
"""

import os

_ENV_VAR = "DCOMPTON_BACKEND"
_backend = None


def _resolve() -> str:
    choice = os.environ.get(_ENV_VAR, "").strip().lower()
    if choice == "numpy":
        return "numpy"
    if choice == "numba":
        import numba  # noqa: F401  -- fail loudly if forced but missing
        return "numba"
    if choice:
        raise ValueError(f"{_ENV_VAR} must be 'numba' or 'numpy', got {choice!r}")
    try:
        import numba  # noqa: F401
        return "numba"
    except ImportError:
        return "numpy"


def active_backend() -> str:
    global _backend
    if _backend is None:
        _backend = _resolve()
    return _backend


def get_kernels():
    """Import and return the active kernel module."""
    if active_backend() == "numba":
        from . import kernels_numba as K
    else:
        from . import kernels_numpy as K
    return K
