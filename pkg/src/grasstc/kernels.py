"""Backend selection for the GF(2) kernels.

The compiled extension is used when it imports; set ``GRASSTC_PURE_PYTHON=1``
to force the pure-Python fallback.
"""

from __future__ import annotations

import os

from . import _pykernels as python_backend

try:
    if os.environ.get("GRASSTC_PURE_PYTHON"):
        raise ImportError("pure-python backend requested")
    from . import _kernels as _active
except ImportError:
    _active = python_backend

try:
    from . import _kernels as compiled_backend
except ImportError:
    compiled_backend = None

BACKEND: str = _active.BACKEND
pack = _active.pack
rref = _active.rref
outer_xor_nonzero = _active.outer_xor_nonzero

__all__ = ["BACKEND", "pack", "rref", "outer_xor_nonzero", "python_backend", "compiled_backend"]
