"""Backend selection for the compiled kernels.

Numba is used when it imports cleanly and ``SATQAOA_DISABLE_NUMBA`` is unset
(or set to ``0``/``false``). Both code paths stay importable so they can be
benchmarked and cross-checked against each other.
"""
import os

try:
    import numba

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - numba is a declared dependency
    numba = None
    HAVE_NUMBA = False

_flag = os.environ.get("SATQAOA_DISABLE_NUMBA", "").strip().lower()
NUMBA_DISABLED = _flag not in ("", "0", "false", "no")
USE_NUMBA = HAVE_NUMBA and not NUMBA_DISABLED


def njit(func):
    if not HAVE_NUMBA:
        return func
    return numba.njit(cache=True, nogil=True)(func)
