"""Backend selection for the two-qubit sweep kernels.

Prefers the compiled Cython extension and falls back to the vectorized
numpy implementation when it is unavailable.  Set DSTRENGTH_KERNEL=python
to force the fallback (e.g. when benchmarking or debugging).
"""

from __future__ import annotations

import os

from . import _kernels_py

_forced = os.environ.get("DSTRENGTH_KERNEL", "").strip().lower()

if _forced in ("", "auto", "cython", "c"):
    try:
        from . import _kernels as _impl
        BACKEND = "cython"
    except ImportError:
        if _forced in ("cython", "c"):
            raise
        _impl = _kernels_py
        BACKEND = "python"
elif _forced == "python":
    _impl = _kernels_py
    BACKEND = "python"
else:
    raise ValueError(f"DSTRENGTH_KERNEL={_forced!r} not recognized (auto|cython|python)")

sep_xi_max = _impl.sep_xi_max
rho_xi_max = _impl.rho_xi_max
assemble_separable = _kernels_py.assemble_separable
