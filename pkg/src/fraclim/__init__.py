"""Caputo and Riemann-Liouville fractional derivatives with a focus on the
behaviour of the local limit x -> a, plus Leibniz product-rule diagnostics.

The quadrature inner loop runs on a compiled extension when one was built;
``KERNEL_BACKEND`` reports which implementation is active.
"""

from .exceptions import (
    DomainError,
    ExprParseError,
    FraclimError,
    InsufficientData,
    PoleError,
    UnsupportedFunction,
    UnsupportedProduct,
)
from .fracderiv import (
    KIND_CAPUTO,
    KIND_RL,
    METHOD_BRIDGE,
    METHOD_CLOSED,
    METHOD_QUAD,
    DerivResult,
    QuadratureConfig,
    caputo_closed,
    caputo_derivative,
    caputo_power,
    caputo_power_coefficient,
    caputo_quadrature,
    closed_form_applicable,
    fractional_integral_fn,
    rl_caputo_bridge,
    rl_derivative,
    rl_power,
    rl_power_value,
)
from .funcmodel import (
    CosTerm,
    ExpTerm,
    FuncExpr,
    PowerTerm,
    SinTerm,
    TaylorPoly,
    derivative,
    evaluate,
    evaluate_many,
    format_expr,
    parse_expr,
    poly_product,
    polynomial_degree,
    taylor_poly,
)
from .kernels import BACKEND as KERNEL_BACKEND
from .leibniz import (
    RULE_INTEGER_SUM,
    RULE_SYMMETRIZED,
    RULE_UNVIOLATED,
    LeibnizReport,
    SeriesResult,
    integer_leibniz,
    leibniz_defect,
    rl_of_product,
    symmetrized_series,
)
from .lfd import (
    CLASS_DIVERGENT,
    CLASS_FINITE,
    CLASS_ZERO,
    Classification,
    LfdReport,
    LfdSample,
    ScanConfig,
    lfd_classify,
    lfd_exact,
    lfd_report,
    lfd_scan,
)
from .specfun import FracOrder, as_order, frac_binomial, gamma, rgamma

__version__ = "0.1.0"

__all__ = [
    "CLASS_DIVERGENT",
    "CLASS_FINITE",
    "CLASS_ZERO",
    "CosTerm",
    "Classification",
    "DerivResult",
    "DomainError",
    "ExpTerm",
    "ExprParseError",
    "FracOrder",
    "FraclimError",
    "FuncExpr",
    "InsufficientData",
    "KERNEL_BACKEND",
    "KIND_CAPUTO",
    "KIND_RL",
    "LeibnizReport",
    "LfdReport",
    "LfdSample",
    "METHOD_BRIDGE",
    "METHOD_CLOSED",
    "METHOD_QUAD",
    "PoleError",
    "PowerTerm",
    "QuadratureConfig",
    "RULE_INTEGER_SUM",
    "RULE_SYMMETRIZED",
    "RULE_UNVIOLATED",
    "ScanConfig",
    "SeriesResult",
    "SinTerm",
    "TaylorPoly",
    "UnsupportedFunction",
    "UnsupportedProduct",
    "as_order",
    "caputo_closed",
    "caputo_derivative",
    "caputo_power",
    "caputo_power_coefficient",
    "caputo_quadrature",
    "closed_form_applicable",
    "derivative",
    "evaluate",
    "evaluate_many",
    "format_expr",
    "frac_binomial",
    "fractional_integral_fn",
    "gamma",
    "integer_leibniz",
    "leibniz_defect",
    "lfd_classify",
    "lfd_exact",
    "lfd_report",
    "lfd_scan",
    "parse_expr",
    "poly_product",
    "polynomial_degree",
    "rgamma",
    "rl_caputo_bridge",
    "rl_derivative",
    "rl_of_product",
    "rl_power",
    "rl_power_value",
    "symmetrized_series",
    "taylor_poly",
    "__version__",
]
