"""Backend selection for the mod-p linear algebra kernels.

Prefers the compiled extension; falls back to the pure-Python implementation
when the extension is missing or the environment variable
``UTGRADINGS_PURE_PYTHON`` is set to a non-empty value.
"""

from __future__ import annotations

import os

if os.environ.get("UTGRADINGS_PURE_PYTHON"):
    from . import _kernel_py as _impl
else:
    try:
        from . import _speedups as _impl  # type: ignore[attr-defined]
    except ImportError:
        from . import _kernel_py as _impl

BACKEND: str = _impl.BACKEND
rref_mod = _impl.rref_mod
reduce_mod = _impl.reduce_mod
matmul_mod = _impl.matmul_mod

__all__ = ["BACKEND", "rref_mod", "reduce_mod", "matmul_mod"]
