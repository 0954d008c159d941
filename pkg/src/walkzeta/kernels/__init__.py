"""Hot numeric kernels with two interchangeable backends.

The backend is picked once at import from ``WALK_ZETA_BACKEND`` (``numba`` or
``numpy``); ``numba`` is the default when it imports cleanly. ``set_backend``
switches at runtime, mostly for tests and the benchmark.
"""
import os

import numpy as np

from . import _numpy

_BACKENDS = {"numpy": _numpy}
try:
    from . import _numba

    _BACKENDS["numba"] = _numba
except ImportError:  # pragma: no cover - numba is optional
    pass

_active = None


def available_backends():
    return sorted(_BACKENDS)


def set_backend(name):
    global _active
    if name not in _BACKENDS:
        raise ValueError(f"unknown or unavailable backend {name!r}; have {available_backends()}")
    _active = name


def backend():
    return _active


def _impl():
    return _BACKENDS[_active]


def apply_jumps(field, nbr, mats):
    return _impl().apply_jumps(
        np.ascontiguousarray(field, dtype=np.complex128),
        np.ascontiguousarray(nbr, dtype=np.int64),
        np.ascontiguousarray(mats, dtype=np.complex128),
    )


def symbol_stack(ks, shifts, mats):
    return _impl().symbol_stack(
        np.ascontiguousarray(ks, dtype=np.float64),
        np.ascontiguousarray(shifts, dtype=np.int64),
        np.ascontiguousarray(mats, dtype=np.complex128),
    )


def det_stack(stack):
    return _impl().det_stack(np.ascontiguousarray(stack, dtype=np.complex128))


def trace_powers(stack, rmax):
    return _impl().trace_powers(np.ascontiguousarray(stack, dtype=np.complex128), int(rmax))


set_backend(os.environ.get("WALK_ZETA_BACKEND", "numba" if "numba" in _BACKENDS else "numpy"))
