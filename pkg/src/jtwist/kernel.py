"""Selects the PBW rewriting kernel.

The compiled extension is used when it was built; set ``JTWIST_PURE=1`` to
force the pure-Python implementation (both produce identical results).
"""
from __future__ import annotations

import os

from . import _pykernel

BACKEND = "python"
PBWKernel = _pykernel.PBWKernel

if os.environ.get("JTWIST_PURE", "").strip() not in ("1", "true", "yes"):
    try:
        from . import _ckernel

        PBWKernel = _ckernel.PBWKernel
        BACKEND = "cython"
    except ImportError:  # extension not built
        pass

PurePBWKernel = _pykernel.PBWKernel

__all__ = ["PBWKernel", "PurePBWKernel", "BACKEND"]
