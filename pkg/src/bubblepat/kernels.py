"""Backend selection for the hot kernels.

The compiled extension is used when it is importable; setting
``BUBBLEPAT_PURE=1`` forces the pure-Python fallback.
"""

from __future__ import annotations

import os

from bubblepat import _pykernels

if os.environ.get("BUBBLEPAT_PURE", "") not in ("", "0"):
    _impl = _pykernels
    BACKEND = "python"
else:
    try:
        from bubblepat import _ckernels as _impl

        BACKEND = "cython"
    except ImportError:  # extension not built
        _impl = _pykernels
        BACKEND = "python"

contains = _impl.contains
avoids_all = _impl.avoids_all
bubble = _impl.bubble
bubble_power = _impl.bubble_power
stack_pass = _impl.stack_pass
is_increasing = _impl.is_increasing
deletions = _impl.deletions
first_missing_deletion = _impl.first_missing_deletion

__all__ = [
    "BACKEND",
    "contains",
    "avoids_all",
    "bubble",
    "bubble_power",
    "stack_pass",
    "is_increasing",
    "deletions",
    "first_missing_deletion",
]
