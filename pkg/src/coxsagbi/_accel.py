"""Selects the compiled or pure-numpy implementation of the hot kernels.

Set ``COXSAGBI_KERNELS=numpy`` to force the numpy fallbacks; the default is
``numba`` whenever numba imports.
"""

import os

try:
    import numba

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - numba is a declared dependency
    numba = None
    HAVE_NUMBA = False


def backend() -> str:
    want = os.environ.get("COXSAGBI_KERNELS", "numba").strip().lower()
    if want not in ("numba", "numpy"):
        raise ValueError(f"COXSAGBI_KERNELS must be 'numba' or 'numpy', got {want!r}")
    if want == "numba" and not HAVE_NUMBA:
        return "numpy"
    return want


def njit(*args, **kwargs):
    """``numba.njit`` when available, otherwise the identity decorator."""
    if HAVE_NUMBA:
        return numba.njit(*args, **kwargs)
    if len(args) == 1 and callable(args[0]) and not kwargs:
        return args[0]
    return lambda f: f
