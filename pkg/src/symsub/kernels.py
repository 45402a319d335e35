"""Kernel selection.

The compiled extension is used when it imports; ``SYMSUB_PURE_PYTHON=1`` forces
the pure-Python fallback.  Both expose the same five functions.
"""
import os

from . import _pykernels as python_backend

compiled_backend = None
if os.environ.get("SYMSUB_PURE_PYTHON", "") not in ("1", "true", "yes"):
    try:
        from . import _ckernels as compiled_backend  # type: ignore[no-redef]
    except ImportError:  # pragma: no cover - depends on build
        compiled_backend = None

_active = compiled_backend or python_backend

BACKEND = _active.BACKEND
lp_add = _active.lp_add
lp_sub = _active.lp_sub
lp_mul = _active.lp_mul
spmv = _active.spmv
spmm = _active.spmm
