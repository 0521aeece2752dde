"""Kernel dispatch: compiled extension when importable, pure Python otherwise."""

from __future__ import annotations

import os

from . import _pykernels

try:
    if os.environ.get("FLIPFORGE_PURE") == "1":
        raise ImportError("pure-Python kernels forced")
    from . import _ckernels as _impl

    BACKEND = "cython"
except ImportError:
    _impl = _pykernels
    BACKEND = "python"

canonical_code = _impl.canonical_code
triangles = _impl.triangles

__all__ = ["BACKEND", "canonical_code", "triangles"]
