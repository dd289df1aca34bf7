"""NumPy implementation of the product-integration kernel.

``product_quad_uniform(values, h, mu)`` integrates (z_N - z)**mu against the
piecewise-linear interpolant of ``values`` sampled on the uniform grid
z_j = z_0 + j*h, j = 0..N.  The kernel moments over each subinterval are
integrated in closed form, so the endpoint singularity (-1 < mu < 0) costs
no accuracy; the only discretization error is the linear-interpolation error
of the smooth factor, which is O(h^2).

With d_j = z_N - z_j = m*h (m = N - j), the two closed-form moments over
subinterval j are

    M0 = h^p (m^p - (m-1)^p) / p                      p = mu + 1
    M1 = h^q [ m (m^p - (m-1)^p)/p - (m^q - (m-1)^q)/q ]   q = mu + 2

and the subinterval contributes  v_j M0 + (v_{j+1} - v_j) M1 / h.  The
p-power difference A_m = m^p - (m-1)^p is evaluated via expm1/log1p to avoid
the cancellation that plain subtraction suffers when mu approaches -1; the
q-power difference then follows exactly as B_m = (m-1) A_m + m^p (expand
(m-1)^q = (m-1)(m-1)^p), which is a sum of positives, so it costs one power
evaluation and no accuracy.
"""

import numpy as np


def product_quad_uniform(values, h, mu):
    v = np.asarray(values, dtype=np.float64)
    if v.ndim != 1 or v.shape[0] < 2:
        raise ValueError("values must be a 1-d array with at least two samples")
    if not h > 0.0:
        raise ValueError(f"h must be positive, got {h!r}")
    p = mu + 1.0
    q = mu + 2.0
    if not p > 0.0:
        raise ValueError(f"kernel exponent must exceed -1, got {mu!r}")
    n = v.shape[0] - 1
    m = np.arange(n, 0, -1, dtype=np.float64)
    am = np.ones(n)
    bm = np.ones(n)
    head = m > 1.0
    mp = np.power(m[head], p)
    am[head] = -mp * np.expm1(p * np.log1p(-1.0 / m[head]))
    bm[head] = (m[head] - 1.0) * am[head] + mp
    dv = np.diff(v)
    acc = v[:-1] @ am / p + dv @ (m * am / p - bm / q)
    return float(h**p * acc)
