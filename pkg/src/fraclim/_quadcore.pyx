# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled inner loop for product integration against (z_N - z)**mu.

Same contract and the same moment algebra as
fraclim._kernel_fallback.product_quad_uniform; see that module for the
derivation.  One extra twist here: the loop walks m = N-j downward and
maintains the running power m**p through the telescoping identity
(m-1)**p = m**p - A_m, so the body costs one log1p and one expm1 per node
and no pow.  The update multiplies by (1 - 1/m)**p < 1 each step, so the
accumulated rounding stays a few ulps even for the largest grids.
"""

from libc.math cimport expm1, log1p, pow


def product_quad_uniform(const double[::1] values, double h, double mu):
    cdef Py_ssize_t n = values.shape[0] - 1
    cdef double p = mu + 1.0
    cdef double q = mu + 2.0
    cdef double acc = 0.0
    cdef double am, bm, mp, m
    cdef Py_ssize_t j

    if n < 1:
        raise ValueError("values must be a 1-d array with at least two samples")
    if not h > 0.0:
        raise ValueError(f"h must be positive, got {h!r}")
    if not p > 0.0:
        raise ValueError(f"kernel exponent must exceed -1, got {mu!r}")

    mp = pow(<double>n, p)
    for j in range(n):
        m = <double>(n - j)
        if m == 1.0:
            am = 1.0
            bm = 1.0
        else:
            am = -mp * expm1(p * log1p(-1.0 / m))
            bm = (m - 1.0) * am + mp
            mp -= am
        acc += values[j] * am / p + (values[j + 1] - values[j]) * (m * am / p - bm / q)
    return pow(h, p) * acc
