"""Backend selection for the bitmap kernels.

The compiled extension is used when it was built; otherwise the pure-Python
module is loaded. Set ``REFACTORSEARCH_PURE_PYTHON=1`` to force the fallback.
"""

from __future__ import annotations

import os

from . import _kernels_py as python_backend

compiled_backend = None
if not os.environ.get("REFACTORSEARCH_PURE_PYTHON"):
    try:
        from . import _kernels as compiled_backend  # type: ignore[no-redef]
    except ImportError:
        compiled_backend = None

_active = compiled_backend if compiled_backend is not None else python_backend

BACKEND: str = _active.BACKEND
closure_bits = _active.closure_bits
pair_counts = _active.pair_counts

__all__ = ["BACKEND", "closure_bits", "pair_counts", "compiled_backend", "python_backend"]
