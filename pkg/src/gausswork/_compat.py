"""Optional numba acceleration for the hot Fock-space kernels.

Kernels are compiled with numba unless the environment variable
``GAUSSWORK_NUMBA`` is set to ``0``/``off``/``false`` or numba is not
importable, in which case the pure-numpy fallback is used.  Both paths
compute identical results; ``benchmarks/bench_kernels.py`` compares them.
"""

import os


def _numba_requested() -> bool:
    flag = os.environ.get("GAUSSWORK_NUMBA", "1").strip().lower()
    return flag not in {"0", "off", "false", "no"}


NUMBA_ENABLED = False
_njit = None
if _numba_requested():
    try:
        from numba import njit as _njit

        NUMBA_ENABLED = True
    except ImportError:  # pragma: no cover - numba is a declared dependency
        _njit = None


def maybe_jit(func):
    """Compile ``func`` with numba when enabled, else return it unchanged."""
    if NUMBA_ENABLED:
        return _njit(cache=True)(func)
    return func
