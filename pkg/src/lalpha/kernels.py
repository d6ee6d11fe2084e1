"""Dispatch to the numba or numpy implementation of the hot kernels.

Both backends stay importable so they can be compared directly
(see ``benchmarks/bench_kernels.py``).
"""

from types import SimpleNamespace

from . import _loops, _vector
from ._accel import NUMBA_AVAILABLE, USE_NUMBA

_NAMES = ("h_array", "synth_p", "synth_fprime", "winding", "fs_scan", "dopri_run")

numpy_backend = SimpleNamespace(name="numpy", **{k: getattr(_vector, k) for k in _NAMES})
numba_backend = (
    SimpleNamespace(name="numba", **{k: getattr(_loops, k) for k in _NAMES})
    if NUMBA_AVAILABLE
    else None
)

active = numba_backend if USE_NUMBA else numpy_backend
BACKEND = active.name

h_array = active.h_array
synth_p = active.synth_p
synth_fprime = active.synth_fprime
winding = active.winding
fs_scan = active.fs_scan
dopri_run = active.dopri_run


def get_backend(name):
    if name == "numpy":
        return numpy_backend
    if name == "numba":
        if numba_backend is None:
            raise RuntimeError("numba is not installed")
        return numba_backend
    raise ValueError(f"unknown backend {name!r}")
