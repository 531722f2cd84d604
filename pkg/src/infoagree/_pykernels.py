"""NumPy implementations of the hot numeric kernels.

Selected by infoagree._kernels when the compiled extension is not available.
Must stay behaviourally identical to _ckernels.pyx; tests/test_kernels.py
checks parity.
"""

from __future__ import annotations

import numpy as np


def xlog2_sum(values: np.ndarray) -> float:
    """Sum of v * log2(v) over the strictly positive entries of ``values``.

    Entries <= 0 contribute nothing; validating that they are legitimate
    (structural zeros rather than bad data) is the caller's job.
    """
    v = np.asarray(values, dtype=np.float64)
    v = v[v > 0.0]
    if v.size == 0:
        return 0.0
    return float(v @ np.log2(v))
