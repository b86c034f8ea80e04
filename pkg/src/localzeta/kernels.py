"""Backend selection for the mod-p matrix kernels.

Prefers the compiled extension; falls back to the pure-Python
implementation when the extension was not built.  Set LOCALZETA_PURE=1
to force the fallback (used by the benchmark to compare both).
"""

from __future__ import annotations

import os

if os.environ.get("LOCALZETA_PURE"):
    from . import _kernels_py as _impl
else:
    try:
        from . import _kernels as _impl  # type: ignore[attr-defined]
    except ImportError:
        from . import _kernels_py as _impl

BACKEND = _impl.BACKEND
IDENTITY = _impl.IDENTITY
mat_mul_mod = _impl.mat_mul_mod
group_closure = _impl.group_closure
mark_products = _impl.mark_products


def backend_name() -> str:
    return BACKEND
