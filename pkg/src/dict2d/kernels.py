"""Hot-loop dispatch: compiled Cython kernels when built, Python otherwise.

Set ``DICT2D_PURE=1`` in the environment to force the pure-Python path.
"""

from __future__ import annotations

import os

from . import _pykernels

BACKEND = "python"
_impl = _pykernels

if not os.environ.get("DICT2D_PURE"):
    try:
        from . import _ckernels as _impl  # type: ignore[no-redef]

        BACKEND = "cython"
    except ImportError:  # extension not built
        pass

prefix_function = _impl.prefix_function
least_rotation = _impl.least_rotation
naive_match = _impl.naive_match
ac_prepare = _impl.ac_prepare
ac_scan = _impl.ac_scan
ac_scan_many = _impl.ac_scan_many
ms_prepare = _impl.ms_prepare
ms_scan = _impl.ms_scan
ms_scan_many = _impl.ms_scan_many

__all__ = [
    "BACKEND",
    "prefix_function",
    "least_rotation",
    "naive_match",
    "ac_prepare",
    "ac_scan",
    "ac_scan_many",
    "ms_prepare",
    "ms_scan",
    "ms_scan_many",
]
