"""Kernel backend selection: compiled extension when available, NumPy otherwise.

Set ``PIVOTLAB_PURE_PYTHON=1`` to force the fallback (used by the kernel
benchmark and for debugging).
"""
from __future__ import annotations

import os

from . import _kernels_py

if os.environ.get("PIVOTLAB_PURE_PYTHON"):
    _impl = _kernels_py
else:
    try:
        from . import _ckernels as _impl  # type: ignore[no-redef]
    except ImportError:
        _impl = _kernels_py

cover_counts = _impl.cover_counts
greedy_cover = _impl.greedy_cover
packing_bound = _impl.packing_bound


def backend_name() -> str:
    return _impl.BACKEND


def available_backends():
    """All importable kernel backends, compiled first."""
    backends = []
    try:
        from . import _ckernels

        backends.append(_ckernels)
    except ImportError:
        pass
    backends.append(_kernels_py)
    return backends
