"""Kernel backend selection.

Prefers the compiled extension built from _ckernels.pyx and falls back to
the NumPy implementation when the extension is missing. Set
INFOAGREE_PURE_PYTHON=1 to skip the extension even when it is installed
(useful for fallback testing and benchmarking).

Call sites go through this module's attributes (``_kernels.xlog2_sum``)
rather than binding the function directly, so benchmarks can swap backends.
"""

from __future__ import annotations

import os

if os.environ.get("INFOAGREE_PURE_PYTHON"):
    from infoagree import _pykernels as _impl

    BACKEND = "python"
else:
    try:
        from infoagree import _ckernels as _impl  # type: ignore[no-redef]

        BACKEND = "compiled"
    except ImportError:
        from infoagree import _pykernels as _impl  # type: ignore[no-redef]

        BACKEND = "python"

xlog2_sum = _impl.xlog2_sum
