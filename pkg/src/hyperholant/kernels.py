"""Kernel selection: the compiled extension when importable, else pure Python.

Set ``HOLANT_PURE_PYTHON=1`` to force the pure-Python kernels.
"""

from __future__ import annotations

import os
from contextlib import contextmanager

from . import _pykernels

BACKEND = "python"
subset_sum = _pykernels.subset_sum
hom_count = _pykernels.hom_count

if os.environ.get("HOLANT_PURE_PYTHON", "") not in ("1", "true", "yes"):
    try:
        from . import _ckernels
    except ImportError:  # extension not built
        _ckernels = None
    if _ckernels is not None:
        subset_sum = _ckernels.subset_sum
        hom_count = _ckernels.hom_count
        BACKEND = "cython"


def backends() -> dict:
    """Every importable kernel implementation, keyed by name."""
    out = {"python": _pykernels}
    try:
        from . import _ckernels as ck

        out["cython"] = ck
    except ImportError:
        pass
    return out


@contextmanager
def use_backend(name: str):
    """Temporarily route every kernel call to backend ``name`` (not thread-safe)."""
    global BACKEND, subset_sum, hom_count
    impl = backends()[name]
    saved = BACKEND, subset_sum, hom_count
    BACKEND, subset_sum, hom_count = name, impl.subset_sum, impl.hom_count
    try:
        yield impl
    finally:
        BACKEND, subset_sum, hom_count = saved
