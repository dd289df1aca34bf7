"""Left-sided Caputo and Riemann-Liouville fractional derivatives.

Closed forms cover power terms centered at the base point; everything else
the symbolic layer can differentiate n times goes through product-integration
quadrature of the singular integral

    (1 / Gamma(n - alpha)) * integral_a^x (x - z)^(n - alpha - 1) f^(n)(z) dz.

The Riemann-Liouville operator is built on top of the Caputo one through the
boundary-term bridge

    RL^alpha f = Caputo^alpha f
                 + sum_{k=0}^{n-1} f^(k)(a) (x - a)^(k - alpha) / Gamma(k + 1 - alpha),

whose 1/Gamma(k+1-alpha) coefficients are forced by the power-rule oracle
(the per-term RL power rule); the superficially plausible 1/k! variant fails
it and is kept only behind ``boundary="factorial"`` so a regression test can
document the failure.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .exceptions import DomainError, UnsupportedFunction
from .funcmodel import FuncExpr, PowerTerm, derivative, evaluate, evaluate_many
from .kernels import product_quad_uniform
from .specfun import FracOrder, as_order, gamma, rgamma

__all__ = [
    "DerivResult",
    "QuadratureConfig",
    "caputo_closed",
    "caputo_derivative",
    "caputo_power",
    "caputo_power_coefficient",
    "caputo_quadrature",
    "caputo_quadrature_fn",
    "closed_form_applicable",
    "fractional_integral_fn",
    "power_parts",
    "rl_caputo_bridge",
    "rl_closed",
    "rl_derivative",
    "rl_power",
    "rl_power_value",
]

KIND_CAPUTO = "Caputo"
KIND_RL = "RiemannLiouville"
METHOD_CLOSED = "ClosedForm"
METHOD_QUAD = "Quadrature"
METHOD_BRIDGE = "Bridge"


@dataclass(frozen=True)
class QuadratureConfig:
    """Uniform-grid discretization of the singular integral.

    ``nodes`` is the number of subintervals of [a, x]; ``min_gap`` is the
    smallest admissible x - a before the grid degenerates.
    """

    nodes: int = 1024
    min_gap: float = 1e-12

    def __post_init__(self):
        if self.nodes != int(self.nodes) or self.nodes < 2:
            raise DomainError(f"nodes must be an integer >= 2, got {self.nodes!r}")
        if not self.min_gap > 0.0:
            raise DomainError(f"min_gap must be positive, got {self.min_gap!r}")


@dataclass(frozen=True)
class DerivResult:
    """A single derivative evaluation.

    ``est_error`` is present exactly when the value came from quadrature
    (Richardson estimate from the half-resolution grid).
    """

    value: float
    kind: str
    method: str
    est_error: float | None = None

    def __post_init__(self):
        if (self.est_error is not None) != (self.method == METHOD_QUAD):
            raise ValueError("est_error must be present iff method is Quadrature")


def _check_interval(a, x):
    if not x > a:
        raise DomainError(f"evaluation point must satisfy x > a, got x={x!r}, a={a!r}")


# ---------------------------------------------------------------------------
# closed forms for power terms


def caputo_power_coefficient(beta: float, alpha: FracOrder) -> float:
    """Prefactor of (x-a)^(beta-alpha) in the Caputo power rule.

    Exactly 0.0 for integer beta <= n-1 (those monomials sit inside the
    Taylor polynomial the Caputo form subtracts) and whenever
    rgamma(beta - alpha + 1) vanishes.
    """
    if beta == math.floor(beta) and beta <= alpha.n - 1:
        return 0.0
    return gamma(beta + 1.0) * rgamma(beta - alpha.alpha + 1.0)


def rl_power_value(beta: float, order: float, a: float, x: float) -> float:
    """Riemann-Liouville power rule Gamma(b+1)/Gamma(b+1-order) (x-a)^(b-order).

    ``order`` may be any real: positive (derivative), zero (identity) or
    negative (fractional integral); the formula is one and the same.
    """
    coef = gamma(beta + 1.0) * rgamma(beta + 1.0 - order)
    if coef == 0.0:
        return 0.0
    return coef * (x - a) ** (beta - order)


def caputo_power(beta: float, alpha, a: float, x: float) -> DerivResult:
    """Caputo derivative of (x - a)**beta, beta > -1, at x > a."""
    alpha = as_order(alpha)
    _check_interval(a, x)
    if not beta > -1.0:
        raise DomainError(f"beta must exceed -1, got {beta!r}")
    coef = caputo_power_coefficient(beta, alpha)
    value = 0.0 if coef == 0.0 else coef * (x - a) ** (beta - alpha.alpha)
    return DerivResult(value, KIND_CAPUTO, METHOD_CLOSED)


def rl_power(beta: float, alpha, a: float, x: float) -> DerivResult:
    """Riemann-Liouville derivative of (x - a)**beta; constants do NOT die."""
    alpha = as_order(alpha)
    _check_interval(a, x)
    if not beta > -1.0:
        raise DomainError(f"beta must exceed -1, got {beta!r}")
    return DerivResult(rl_power_value(beta, alpha.alpha, a, x), KIND_RL, METHOD_CLOSED)


def power_parts(f: FuncExpr, a: float):
    """Decompose f into [(c, beta)] about center a, or raise.

    Constant terms are accepted regardless of their recorded center since
    (x - x0)^0 == (x - a)^0; any other term must be a PowerTerm with x0 == a.
    """
    parts = []
    for t in f.terms:
        if not isinstance(t, PowerTerm):
            raise UnsupportedFunction(f"term {t!r} has no closed-form power rule")
        if t.beta == 0.0:
            parts.append((t.c, 0.0))
        elif t.x0 == a:
            parts.append((t.c, t.beta))
        else:
            raise UnsupportedFunction(
                f"power term centered at {t.x0!r} cannot be differentiated about {a!r}"
            )
    return parts


def closed_form_applicable(f: FuncExpr, a: float) -> bool:
    """True when caputo_closed / rl_closed accept f about a."""
    try:
        power_parts(f, a)
    except UnsupportedFunction:
        return False
    return True


def caputo_closed(f: FuncExpr, alpha, a: float, x: float) -> DerivResult:
    """Term-by-term Caputo power rule for power functions centered at a."""
    alpha = as_order(alpha)
    _check_interval(a, x)
    value = 0.0
    for c, beta in power_parts(f, a):
        coef = c * caputo_power_coefficient(beta, alpha)
        if coef != 0.0:
            value += coef * (x - a) ** (beta - alpha.alpha)
    return DerivResult(value, KIND_CAPUTO, METHOD_CLOSED)


def rl_closed(f: FuncExpr, alpha, a: float, x: float) -> DerivResult:
    """Term-by-term Riemann-Liouville power rule."""
    alpha = as_order(alpha)
    _check_interval(a, x)
    value = 0.0
    for c, beta in power_parts(f, a):
        value += c * rl_power_value(beta, alpha.alpha, a, x)
    return DerivResult(value, KIND_RL, METHOD_CLOSED)


# ---------------------------------------------------------------------------
# quadrature


def caputo_quadrature(f: FuncExpr, alpha, a: float, x: float,
                      cfg: QuadratureConfig = QuadratureConfig()) -> DerivResult:
    """Caputo derivative by product integration of the exact n-th derivative.

    Integer alpha dispatches to the exact symbolic derivative (the singular
    integral degenerates there: Gamma(n - alpha) has a pole).  For fractional
    alpha the estimate ``est_error = |value(N) - value(N/2)| / 3`` follows
    from the O(h^2) convergence of the product-trapezoid rule.
    """
    alpha = as_order(alpha)
    _check_interval(a, x)
    if x - a < cfg.min_gap:
        raise DomainError(f"x - a = {x - a!r} is below min_gap = {cfg.min_gap!r}")
    if alpha.is_integer:
        value = evaluate(derivative(f, alpha.n), x)
        return DerivResult(value, KIND_CAPUTO, METHOD_CLOSED)
    fn = derivative(f, alpha.n)
    return caputo_quadrature_fn(lambda zs: evaluate_many(fn, zs), alpha, a, x, cfg)


def caputo_quadrature_fn(nth_derivative_values, alpha, a: float, x: float,
                         cfg: QuadratureConfig = QuadratureConfig()) -> DerivResult:
    """Quadrature core taking a callable that samples f^(n) on a grid.

    Used directly when f^(n) is only available pointwise, e.g. the general
    Leibniz expansion of a product.  Requires non-integer alpha.
    """
    alpha = as_order(alpha)
    if alpha.is_integer:
        raise DomainError("quadrature core needs a non-integer order")
    n = alpha.n
    mu = n - alpha.alpha - 1.0
    scale = rgamma(n - alpha.alpha)
    nodes = cfg.nodes
    zs = np.linspace(a, x, nodes + 1)
    v = np.ascontiguousarray(nth_derivative_values(zs), dtype=np.float64)
    fine = scale * product_quad_uniform(v, (x - a) / nodes, mu)
    half = nodes // 2
    if nodes % 2 == 0:
        vc = np.ascontiguousarray(v[::2])
    else:
        zc = np.linspace(a, x, half + 1)
        vc = np.ascontiguousarray(nth_derivative_values(zc), dtype=np.float64)
    coarse = scale * product_quad_uniform(vc, (x - a) / half, mu)
    return DerivResult(fine, KIND_CAPUTO, METHOD_QUAD, abs(fine - coarse) / 3.0)


def fractional_integral_fn(function_values, order: float, a: float, x: float,
                           cfg: QuadratureConfig = QuadratureConfig()) -> float:
    """Riemann-Liouville integral of positive order for a sampled function.

    The kernel exponent order - 1 exceeds -1, so the same product rule
    applies; no Richardson estimate is kept (callers track convergence via
    their own series diagnostics).
    """
    if not order > 0.0:
        raise DomainError(f"integral order must be positive, got {order!r}")
    _check_interval(a, x)
    if x - a < cfg.min_gap:
        raise DomainError(f"x - a = {x - a!r} is below min_gap = {cfg.min_gap!r}")
    nodes = cfg.nodes
    zs = np.linspace(a, x, nodes + 1)
    v = np.ascontiguousarray(function_values(zs), dtype=np.float64)
    return rgamma(order) * product_quad_uniform(v, (x - a) / nodes, order - 1.0)


# ---------------------------------------------------------------------------
# Riemann-Liouville through the bridge


def rl_caputo_bridge(f: FuncExpr, alpha, a: float, x: float,
                     cfg: QuadratureConfig = QuadratureConfig(),
                     boundary: str = "gamma") -> DerivResult:
    """RL derivative as Caputo plus boundary terms.

    ``boundary="gamma"`` uses the oracle-consistent 1/Gamma(k+1-alpha)
    coefficients.  ``boundary="factorial"`` substitutes 1/k! and exists only
    so tests can document that the factorial variant breaks the power rule.
    At integer alpha every gamma-form boundary term vanishes through rgamma,
    so RL and Caputo collapse to the classical derivative together.
    """
    if boundary not in ("gamma", "factorial"):
        raise ValueError(f"boundary must be 'gamma' or 'factorial', got {boundary!r}")
    alpha = as_order(alpha)
    _check_interval(a, x)
    try:
        cap = caputo_closed(f, alpha, a, x)
    except UnsupportedFunction:
        cap = caputo_quadrature(f, alpha, a, x, cfg)
    value = cap.value
    g = f
    for k in range(alpha.n):
        fk_a = evaluate(g, a)
        if boundary == "gamma":
            coef = rgamma(k + 1.0 - alpha.alpha)
        else:
            coef = 1.0 / math.factorial(k)
        if fk_a != 0.0 and coef != 0.0:
            value += fk_a * coef * (x - a) ** (k - alpha.alpha)
        if k + 1 < alpha.n:
            g = derivative(g, 1)
    return DerivResult(value, KIND_RL, METHOD_BRIDGE)


# ---------------------------------------------------------------------------
# friendly dispatchers


def caputo_derivative(f: FuncExpr, alpha, a: float, x: float,
                      cfg: QuadratureConfig = QuadratureConfig()) -> DerivResult:
    """Caputo derivative by the best route: closed form, else quadrature."""
    try:
        return caputo_closed(f, alpha, a, x)
    except UnsupportedFunction:
        return caputo_quadrature(f, alpha, a, x, cfg)


def rl_derivative(f: FuncExpr, alpha, a: float, x: float,
                  cfg: QuadratureConfig = QuadratureConfig()) -> DerivResult:
    """RL derivative by the best route: closed form, else the bridge."""
    try:
        return rl_closed(f, alpha, a, x)
    except UnsupportedFunction:
        return rl_caputo_bridge(f, alpha, a, x, cfg)
