"""Quadrature kernel backend selection.

The compiled extension (fraclim._quadcore) is preferred when it was built;
otherwise the NumPy fallback is used.  Set FRACLIM_FORCE_FALLBACK=1 before
import to force the fallback (the benchmark and the backend-agreement tests
use this).  Both backends implement the identical contract, documented in
fraclim._kernel_fallback.
"""

import os

from . import _kernel_fallback

fallback_product_quad_uniform = _kernel_fallback.product_quad_uniform

try:
    from ._quadcore import product_quad_uniform as compiled_product_quad_uniform
except ImportError:  # extension not built; pure-Python install
    compiled_product_quad_uniform = None

_force = os.environ.get("FRACLIM_FORCE_FALLBACK", "") not in ("", "0")

if compiled_product_quad_uniform is not None and not _force:
    BACKEND = "compiled"
    product_quad_uniform = compiled_product_quad_uniform
else:
    BACKEND = "python"
    product_quad_uniform = fallback_product_quad_uniform
