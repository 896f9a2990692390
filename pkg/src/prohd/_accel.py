"""Backend selection for the hot kernels.

Numba is used when it imports cleanly and ``PROHD_DISABLE_NUMBA`` is unset
(or ``0``). Otherwise every kernel runs through its pure-numpy twin, which
produces bit-identical results.

``PROHD_NUM_THREADS`` sets the default worker count for parallel kernels.
"""

from __future__ import annotations

import contextlib
import functools
import os

_FALSY = {"", "0", "false", "no", "off"}

NUMBA_DISABLED = os.environ.get("PROHD_DISABLE_NUMBA", "").strip().lower() not in _FALSY

if not NUMBA_DISABLED:
    # Prefer OpenMP so concurrent callers are safe and the TBB version probe stays quiet.
    os.environ.setdefault("NUMBA_THREADING_LAYER_PRIORITY", "omp tbb workqueue")
    try:
        import numba
        from numba import njit, prange

        NUMBA_OK = True
    except ImportError:  # pragma: no cover - depends on environment
        NUMBA_OK = False
else:
    NUMBA_OK = False

if not NUMBA_OK:
    numba = None
    prange = range

    def njit(*args, **kwargs):
        if len(args) == 1 and callable(args[0]) and not kwargs:
            return args[0]

        def deco(f):
            @functools.wraps(f)
            def wrapper(*a, **kw):
                return f(*a, **kw)

            return wrapper

        return deco


USE_NUMBA = NUMBA_OK


def backend_name() -> str:
    return "numba" if USE_NUMBA else "numpy"


def max_threads() -> int:
    if USE_NUMBA:
        return int(numba.config.NUMBA_NUM_THREADS)
    return 1


def _env_threads() -> int | None:
    raw = os.environ.get("PROHD_NUM_THREADS", "").strip()
    if not raw:
        return None
    try:
        value = int(raw)
    except ValueError:
        return None
    return value if value > 0 else None


def set_threads(n: int | None) -> int:
    """Set the worker count for parallel kernels, clamped to what the runtime allows.

    ``None`` falls back to ``PROHD_NUM_THREADS`` and then to the maximum.
    Returns the count actually in effect.
    """
    if n is None:
        n = _env_threads()
    if n is None:
        n = max_threads()
    n = max(1, min(int(n), max_threads()))
    if USE_NUMBA:
        numba.set_num_threads(n)
    return n


def get_threads() -> int:
    if USE_NUMBA:
        return int(numba.get_num_threads())
    return 1


@contextlib.contextmanager
def threads(n: int | None):
    previous = get_threads()
    try:
        yield set_threads(n)
    finally:
        if USE_NUMBA:
            numba.set_num_threads(previous)


if USE_NUMBA and _env_threads() is not None:
    set_threads(None)

__all__ = [
    "NUMBA_OK",
    "USE_NUMBA",
    "backend_name",
    "get_threads",
    "max_threads",
    "njit",
    "prange",
    "set_threads",
    "threads",
]
