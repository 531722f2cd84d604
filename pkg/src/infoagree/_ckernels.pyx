# cython: boundscheck=False, wraparound=False, initializedcheck=False, cdivision=True
"""Compiled implementations of the hot numeric kernels.

The x*log2(x) accumulation over all matrix cells dominates the cost of the
agreement computation, hence the fused single-pass loop here. Behaviour must
match _pykernels.py exactly; tests/test_kernels.py checks parity.
"""

from libc.math cimport log2


def xlog2_sum(const double[::1] values):
    """Sum of v * log2(v) over the strictly positive entries of ``values``.

    Entries <= 0 contribute nothing. Requires a C-contiguous float64 buffer.
    """
    cdef Py_ssize_t i, n = values.shape[0]
    cdef double acc = 0.0
    cdef double v
    for i in range(n):
        v = values[i]
        if v > 0.0:
            acc += v * log2(v)
    return acc
