"""
Special functions and numerical differentiation.

This module provides:
- Gamma and log-Gamma via the Lanczos approximation (g = 7, 9 coefficients),
- the Gauss hypergeometric series 2F1 on |x| < 1,
- the volume of the unit ball of l^p in dimension alpha,
- central second differences and grid estimates of curvature bounds.

All functions are pure; nothing here keeps state between calls.
"""

import logging
import math
import sys
from dataclasses import dataclass
from typing import TYPE_CHECKING, Optional, Tuple

import numpy as np

from .errors import ConvergenceError, DomainError
from .interval import Interval

if TYPE_CHECKING:
    from .functions import FunctionSpec

logger = logging.getLogger(__name__)

# Lanczos coefficients for g = 7, n = 9
LANCZOS_G = 7.0
LANCZOS_COEFFS: Tuple[float, ...] = (
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
)
_HALF_LOG_TWO_PI = 0.5 * math.log(2.0 * math.pi)
_SQRT_TWO_PI = math.sqrt(2.0 * math.pi)

HYP2F1_TERM_CAP = 10_000
HYP2F1_REL_TOL = 1e-15

# eps^(1/4), optimal step scale for central second differences
AUTO_STEP = sys.float_info.epsilon ** 0.25


def _lanczos_sum(z: float) -> Tuple[float, float]:
    """Returns (series, t) for the shifted argument z = x - 1."""
    series = LANCZOS_COEFFS[0]
    for i in range(1, len(LANCZOS_COEFFS)):
        series += LANCZOS_COEFFS[i] / (z + i)
    return series, z + LANCZOS_G + 0.5


def gamma(x: float) -> float:
    """
    Euler's Gamma function for x > 0.

    Arguments below 1/2 are lifted with Gamma(x) = Gamma(x + 1) / x; the
    reflection formula is not used since negative arguments are rejected.

    Raises:
        DomainError: if x <= 0.
    """
    x = float(x)
    if not x > 0:
        raise DomainError(f"gamma requires x > 0, got {x!r}")
    if x < 0.5:
        return gamma(x + 1.0) / x
    if x > 171.7:
        raise DomainError(f"gamma({x}) overflows a double; use ln_gamma")
    series, t = _lanczos_sum(x - 1.0)
    # split the power so t**(x - 0.5) cannot overflow before e^-t scales it
    half_power = t ** (0.5 * (x - 0.5))
    return _SQRT_TWO_PI * half_power * (half_power * math.exp(-t)) * series


def ln_gamma(x: float) -> float:
    """
    Natural log of Gamma(x) for x > 0, without forming Gamma(x) itself.

    Raises:
        DomainError: if x <= 0.
    """
    x = float(x)
    if not x > 0:
        raise DomainError(f"ln_gamma requires x > 0, got {x!r}")
    if x < 0.5:
        return ln_gamma(x + 1.0) - math.log(x)
    series, t = _lanczos_sum(x - 1.0)
    return _HALF_LOG_TWO_PI + (x - 0.5) * math.log(t) - t + math.log(series)


@dataclass(frozen=True)
class HypergeometricParams:
    """
    Parameters a, b, c of the Gauss series 2F1(a, b; c; x), all positive.
    """
    a: float
    b: float
    c: float

    def __post_init__(self) -> None:
        for name in ("a", "b", "c"):
            value = getattr(self, name)
            if not (value > 0 and math.isfinite(value)):
                raise DomainError(f"hypergeometric parameter {name} must be positive, got {value!r}")

    def concave_reciprocal_conditions(self) -> bool:
        """
        True when a + b >= c > 2ab and c >= a + b - 1/2, under which 1/F is
        concave on (0, 1).
        """
        a, b, c = self.a, self.b, self.c
        return a + b >= c > 2.0 * a * b and c >= a + b - 0.5


def hyp2f1(params: HypergeometricParams, x: float) -> float:
    """
    Gauss hypergeometric function by direct summation of its power series.

    Summation stops once a term falls below 1e-15 of the partial sum.

    Raises:
        DomainError: if |x| >= 1.
        ConvergenceError: if 10000 terms are not enough (only as |x| -> 1).
    """
    x = float(x)
    if not abs(x) < 1.0:
        raise DomainError(f"hyp2f1 series requires |x| < 1, got {x!r}")
    a, b, c = params.a, params.b, params.c
    total = 1.0
    term = 1.0
    for n in range(HYP2F1_TERM_CAP):
        term *= (a + n) * (b + n) / ((c + n) * (n + 1)) * x
        total += term
        if abs(term) <= HYP2F1_REL_TOL * abs(total):
            logger.debug("hyp2f1%s at %g converged after %d terms", (a, b, c), x, n + 1)
            return total
    raise ConvergenceError(
        f"hyp2f1{(a, b, c)} at x={x} did not converge within {HYP2F1_TERM_CAP} terms"
    )


def _check_volume_args(alpha: float, p: float) -> Tuple[float, float]:
    alpha, p = float(alpha), float(p)
    if not alpha > 1:
        raise DomainError(f"lp_ball_volume requires alpha > 1, got {alpha!r}")
    if not p > 0:
        raise DomainError(f"lp_ball_volume requires p > 0, got {p!r}")
    return alpha, p


def ln_lp_ball_volume(alpha: float, p: float) -> float:
    """Log of V_alpha(p) = 2^alpha Gamma(1 + 1/p)^alpha / Gamma(1 + alpha/p)."""
    alpha, p = _check_volume_args(alpha, p)
    return alpha * math.log(2.0) + alpha * ln_gamma(1.0 + 1.0 / p) - ln_gamma(1.0 + alpha / p)


def lp_ball_volume(alpha: float, p: float) -> float:
    """Volume of the unit ball of the l^p norm in (real) dimension alpha."""
    return math.exp(ln_lp_ball_volume(alpha, p))


def second_derivative(f: "FunctionSpec", x: float, step: Optional[float] = None) -> float:
    """
    Central second difference (f(x+h) - 2 f(x) + f(x-h)) / h^2.

    Args:
        f: function to differentiate; its domain must contain the stencil.
        x: evaluation point.
        step: h, or None for h = eps^(1/4) * max(1, |x|).

    Raises:
        DomainError: if x - h or x + h leaves the domain of f.
    """
    x = float(x)
    h = AUTO_STEP * max(1.0, abs(x)) if step is None else float(step)
    if not h > 0:
        raise DomainError(f"difference step must be positive, got {h!r}")
    lo, hi = x - h, x + h
    if lo not in f.domain or hi not in f.domain:
        raise DomainError(f"stencil [{lo:g}, {hi:g}] around {x:g} leaves the domain {f.domain} of {f.name}")
    return (f(hi) - 2.0 * f(x) + f(lo)) / (h * h)


@dataclass(frozen=True)
class CurvatureBounds:
    """
    Grid estimate of inf and sup of f'' over a closed interval.

    The estimate is an inner approximation: the true [m, M] contains [m, M]
    found on the grid.
    """
    m: float
    M: float
    interval: Interval
    grid_n: int


def curvature_bounds(f: "FunctionSpec", interval: Interval, grid_n: int) -> CurvatureBounds:
    """
    Estimates (inf f'', sup f'') by second differences on a uniform grid.

    Raises:
        DomainError: if grid_n < 2 or a stencil leaves f's domain.
    """
    if grid_n < 2:
        raise DomainError(f"curvature_bounds needs grid_n >= 2, got {grid_n}")
    values = np.array([second_derivative(f, x) for x in interval.nodes(grid_n)])
    bounds = CurvatureBounds(float(values.min()), float(values.max()), interval, grid_n)
    logger.debug("curvature of %s on %s with %d nodes: [%g, %g]", f.name, interval, grid_n, bounds.m, bounds.M)
    return bounds
