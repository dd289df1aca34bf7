"""Product-rule diagnostics for fractional derivatives.

The classical Leibniz rule D(fg) = (Df)g + f(Dg) holds for no fractional
order: among all orders alpha > 0 it survives only at alpha = 1.
``leibniz_defect`` measures the violation pointwise.  What replaces the rule
is either the finite binomial sum at integer orders, or the symmetrized
infinite series

    D^alpha(fg) = sum_k  [Gamma(a+1) / (2 Gamma(a-k+1) Gamma(k+1))]
                        * [ (D^(alpha-k) f) g^(k) + (D^(alpha-k) g) f^(k) ]

whose k > alpha terms involve fractional *integrals* (negative-order RL
operators).  The series terminates for polynomials and is truncated at K
otherwise, with |term_K| reported as the residual.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .exceptions import DomainError, UnsupportedProduct
from .fracderiv import (
    QuadratureConfig,
    caputo_derivative,
    caputo_quadrature_fn,
    closed_form_applicable,
    fractional_integral_fn,
    power_parts,
    rl_caputo_bridge,
    rl_derivative,
    rl_power_value,
)
from .funcmodel import (
    FuncExpr,
    derivative,
    evaluate,
    evaluate_many,
    poly_product,
    polynomial_degree,
)
from .specfun import FracOrder, as_order, frac_binomial, rgamma

__all__ = [
    "RULE_INTEGER_SUM",
    "RULE_SYMMETRIZED",
    "RULE_UNVIOLATED",
    "LeibnizReport",
    "SeriesResult",
    "integer_leibniz",
    "leibniz_defect",
    "rl_of_product",
    "symmetrized_series",
]

RULE_UNVIOLATED = "Unviolated"
RULE_INTEGER_SUM = "IntegerSum"
RULE_SYMMETRIZED = "SymmetrizedSeries"

_DEFAULT_TRUNCATION = 12


@dataclass(frozen=True)
class LeibnizReport:
    """Pointwise defects of one product-rule form, plus series diagnostics."""

    alpha: FracOrder
    points: tuple
    defect: tuple
    max_abs_defect: float
    rule_form: str
    truncation_K: int | None = None
    series_residual: float | None = None

    def to_json_dict(self) -> dict:
        return {
            "alpha": self.alpha.alpha,
            "points": list(self.points),
            "defect": list(self.defect),
            "max_abs_defect": self.max_abs_defect,
            "rule_form": self.rule_form,
            "truncation_K": self.truncation_K,
            "series_residual": self.series_residual,
        }

    def to_csv(self) -> str:
        lines = ["x,defect"]
        for x, d in zip(self.points, self.defect):
            lines.append(f"{x!r},{d!r}")
        return "\n".join(lines) + "\n"


@dataclass(frozen=True)
class SeriesResult:
    """Partial sum of the symmetrized series through k = K.

    ``residual`` is |term_K|; ``nonconvergent`` flags |term_k| growing over
    the last three terms (the truncation is then meaningless).
    """

    value: float
    residual: float
    nonconvergent: bool = False

    def __iter__(self):
        return iter((self.value, self.residual))


# ---------------------------------------------------------------------------
# operator dispatch helpers


def _d_point(f, alpha, a, x, cfg, operator):
    if operator == "caputo":
        return caputo_derivative(f, alpha, a, x, cfg).value
    return rl_derivative(f, alpha, a, x, cfg).value


def _product_nth_values(f, g, n):
    """Callable sampling (fg)^(n) via the integer Leibniz expansion of the
    symbolic factor derivatives (exact binomials, exact derivatives)."""
    pairs = [
        (math.comb(n, j), derivative(f, j), derivative(g, n - j)) for j in range(n + 1)
    ]

    def values(zs):
        total = 0.0
        for cnj, fj, gnj in pairs:
            total = total + cnj * evaluate_many(fj, zs) * evaluate_many(gnj, zs)
        return total

    return values


def _product_kth_at(f, g, k, a):
    """(fg)^(k)(a) by general Leibniz (k = 0 means the plain product)."""
    total = 0.0
    for j in range(k + 1):
        total += math.comb(k, j) * evaluate(derivative(f, j), a) * evaluate(
            derivative(g, k - j), a
        )
    return total


def _d_product_point(f, g, alpha, a, x, cfg, operator):
    """D^alpha(fg)(x): expand symbolically when possible, else quadrature on
    the Leibniz-expanded n-th derivative of the product."""
    try:
        return _d_point(poly_product(f, g), alpha, a, x, cfg, operator)
    except UnsupportedProduct:
        pass
    n = alpha.n
    values = _product_nth_values(f, g, n)
    if alpha.is_integer:
        cap = _product_kth_at(f, g, n, x)
    else:
        cap = caputo_quadrature_fn(values, alpha, a, x, cfg).value
    if operator == "caputo":
        return cap
    bridge = 0.0
    for k in range(n):
        coef = rgamma(k + 1.0 - alpha.alpha)
        if coef != 0.0:
            bridge += _product_kth_at(f, g, k, a) * coef * (x - a) ** (k - alpha.alpha)
    return cap + bridge


def rl_of_product(f: FuncExpr, g: FuncExpr, alpha, a: float, x: float,
                  cfg: QuadratureConfig = QuadratureConfig()) -> float:
    """Riemann-Liouville derivative of the product fg (reference side of the
    symmetrized-series identity)."""
    alpha = as_order(alpha)
    return _d_product_point(f, g, alpha, float(a), float(x), cfg, "rl")


# ---------------------------------------------------------------------------
# the three rule forms


def leibniz_defect(f: FuncExpr, g: FuncExpr, alpha, a: float, points,
                   cfg: QuadratureConfig = QuadratureConfig(),
                   operator: str = "caputo") -> LeibnizReport:
    """Pointwise defect D^alpha(fg) - (D^alpha f) g - f (D^alpha g).

    ``operator`` selects Caputo (default) or RL ("rl").  The defect vanishes
    identically only at alpha = 1.
    """
    if operator not in ("caputo", "rl"):
        raise ValueError(f"operator must be 'caputo' or 'rl', got {operator!r}")
    alpha = as_order(alpha)
    a = float(a)
    pts = tuple(float(p) for p in points)
    if not pts:
        raise DomainError("need at least one evaluation point")
    if any(p <= a for p in pts):
        raise DomainError("every evaluation point must lie right of a")
    defects = []
    for x in pts:
        dfg = _d_product_point(f, g, alpha, a, x, cfg, operator)
        df = _d_point(f, alpha, a, x, cfg, operator)
        dg = _d_point(g, alpha, a, x, cfg, operator)
        defects.append(dfg - df * evaluate(g, x) - evaluate(f, x) * dg)
    return LeibnizReport(
        alpha=alpha,
        points=pts,
        defect=tuple(defects),
        max_abs_defect=max(abs(d) for d in defects),
        rule_form=RULE_UNVIOLATED,
    )


def integer_leibniz(f: FuncExpr, g: FuncExpr, n: int, x: float) -> float:
    """Finite product-rule sum at integer order n with gamma coefficients:
    sum_k Gamma(n+1)/(Gamma(n-k+1) Gamma(k+1)) f^(n-k)(x) g^(k)(x)."""
    if n != int(n) or n < 1:
        raise DomainError(f"n must be a positive integer, got {n!r}")
    n = int(n)
    x = float(x)
    total = 0.0
    for k in range(n + 1):
        total += (
            frac_binomial(float(n), k)
            * evaluate(derivative(f, n - k), x)
            * evaluate(derivative(g, k), x)
        )
    return total


def _rl_any_order(f, order, a, x, cfg):
    """RL operator of arbitrary real order: derivative (order > 0), identity
    (order == 0) or fractional integral (order < 0)."""
    if order == 0.0:
        return evaluate(f, x)
    if closed_form_applicable(f, a):
        return sum(c * rl_power_value(beta, order, a, x) for c, beta in power_parts(f, a))
    if order > 0.0:
        return rl_caputo_bridge(f, FracOrder(order), a, x, cfg).value
    return fractional_integral_fn(lambda zs: evaluate_many(f, zs), -order, a, x, cfg)


def symmetrized_series(f: FuncExpr, g: FuncExpr, alpha, a: float, x: float,
                       K: int | None = None,
                       cfg: QuadratureConfig = QuadratureConfig()) -> SeriesResult:
    """Partial sum through k = K of the symmetrized product-rule series.

    K defaults to deg f + deg g for polynomial factors (the series terminates
    there) and to 12 otherwise.  Terms with k > alpha at integer alpha vanish
    through the binomial coefficient, recovering the finite integer rule.
    """
    alpha = as_order(alpha)
    a = float(a)
    x = float(x)
    if not x > a:
        raise DomainError(f"evaluation point must satisfy x > a, got x={x!r}, a={a!r}")
    if K is None:
        degf = polynomial_degree(f)
        degg = polynomial_degree(g)
        if degf is not None and degg is not None:
            K = degf + degg
        else:
            K = _DEFAULT_TRUNCATION
    if K != int(K) or K < 0:
        raise DomainError(f"K must be a non-negative integer, got {K!r}")
    terms = []
    total = 0.0
    for k in range(int(K) + 1):
        b = frac_binomial(alpha.alpha, k, halved=True)
        if b == 0.0:
            term = 0.0
        else:
            order = alpha.alpha - k
            term = b * (
                _rl_any_order(f, order, a, x, cfg) * evaluate(derivative(g, k), x)
                + _rl_any_order(g, order, a, x, cfg) * evaluate(derivative(f, k), x)
            )
        terms.append(term)
        total += term
    growing = len(terms) >= 3 and abs(terms[-1]) > abs(terms[-2]) > abs(terms[-3])
    return SeriesResult(total, abs(terms[-1]), growing)
