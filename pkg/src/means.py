"""
Means Module

This module implements the means the inequalities are built from:
- weighted quasi-arithmetic means M_phi for a closed set of generators,
- power means of any order, including 0 and +/- infinity,
- the two-point logarithmic and identric means,
- the three-point logarithmic mean, evaluated as twice the second divided
  difference of exp at the log-points.
"""

import logging
import math
from dataclasses import dataclass
from enum import Enum
from typing import Iterable, NamedTuple, Optional, Sequence, Tuple

import numpy as np

from .errors import DomainError
from .interval import Interval

logger = logging.getLogger(__name__)

WEIGHT_SUM_TOL = 1e-12
LOG_MEAN2_GUARD = 1e-12
# log-spread below which the three-point mean uses its Taylor form. The first
# dropped term is h_7/9!, at most 36 * 1e-14 / 9! ~ 1e-18 against a leading 1/2.
# The difference quotient loses about eps / spread, 2e-14 at this spread but
# 2e-8 at a 1e-8 switch, so the series branch is kept wide.
CONFLUENT_SPREAD = 1e-2
CONFLUENT_ORDER = 6


class GeneratorKind(Enum):
    IDENTITY = "identity"
    POWER = "power"
    LOG = "log"
    EXP = "exp"


class Direction(Enum):
    INCREASING = "increasing"
    DECREASING = "decreasing"


@dataclass(frozen=True)
class Generator:
    """
    A strictly monotone continuous function phi with a closed-form inverse.

    Attributes:
        kind (GeneratorKind): which closed form.
        parameter (float): exponent p for POWER generators, unused otherwise.
    """
    kind: GeneratorKind
    parameter: float = 0.0

    def __post_init__(self) -> None:
        if self.kind is GeneratorKind.POWER:
            if self.parameter == 0 or not math.isfinite(self.parameter):
                raise DomainError(f"power generator needs a finite nonzero exponent, got {self.parameter!r}")

    @classmethod
    def identity(cls) -> "Generator":
        return cls(GeneratorKind.IDENTITY)

    @classmethod
    def power(cls, p: float) -> "Generator":
        return cls(GeneratorKind.POWER, float(p))

    @classmethod
    def log(cls) -> "Generator":
        return cls(GeneratorKind.LOG)

    @classmethod
    def exp(cls) -> "Generator":
        return cls(GeneratorKind.EXP)

    @property
    def name(self) -> str:
        if self.kind is GeneratorKind.POWER:
            return f"power:{self.parameter:g}"
        return self.kind.value

    @property
    def direction(self) -> Direction:
        if self.kind is GeneratorKind.POWER and self.parameter < 0:
            return Direction.DECREASING
        return Direction.INCREASING

    @property
    def increasing(self) -> bool:
        return self.direction is Direction.INCREASING

    @property
    def domain(self) -> Interval:
        if self.kind in (GeneratorKind.IDENTITY, GeneratorKind.EXP):
            return Interval.real_line()
        if self.kind is GeneratorKind.POWER and self.parameter > 0:
            return Interval.positive(include_zero=True)
        return Interval.positive()

    @property
    def range(self) -> Interval:
        if self.kind in (GeneratorKind.IDENTITY, GeneratorKind.LOG):
            return Interval.real_line()
        if self.kind is GeneratorKind.POWER and self.parameter > 0:
            return Interval.positive(include_zero=True)
        return Interval.positive()

    def apply(self, x: float) -> float:
        x = self.domain.require(x, f"{self.name} generator argument")
        if self.kind is GeneratorKind.IDENTITY:
            return x
        if self.kind is GeneratorKind.POWER:
            return x ** self.parameter
        if self.kind is GeneratorKind.LOG:
            return math.log(x)
        return math.exp(x)

    def invert(self, y: float) -> float:
        y = self.range.require(y, f"{self.name} generator value")
        if self.kind is GeneratorKind.IDENTITY:
            return y
        if self.kind is GeneratorKind.POWER:
            return y ** (1.0 / self.parameter)
        if self.kind is GeneratorKind.LOG:
            return math.exp(y)
        return math.log(y)

    def _limit(self, x: float) -> float:
        """phi at x, extended by its limits at 0 and +/- infinity."""
        if self.kind is GeneratorKind.IDENTITY:
            return x
        if self.kind is GeneratorKind.LOG:
            return -math.inf if x == 0 else math.log(x)
        if self.kind is GeneratorKind.EXP:
            return math.exp(x)
        if x == 0:
            return 0.0 if self.parameter > 0 else math.inf
        return x ** self.parameter

    def image(self, interval: Interval) -> Interval:
        """phi(I), with the endpoints swapped when phi is decreasing."""
        if not self.domain.contains_interval(interval):
            raise DomainError(f"{interval} is not inside the domain {self.domain} of the {self.name} generator")
        a, b = self._limit(interval.lo), self._limit(interval.hi)
        closed_a = interval.closed_lo and math.isfinite(a)
        closed_b = interval.closed_hi and math.isfinite(b)
        if self.increasing:
            return Interval(a, b, closed_a, closed_b)
        return Interval(b, a, closed_b, closed_a)


def apply(g: Generator, x: float) -> float:
    """phi(x) for the generator g."""
    return g.apply(x)


def invert(g: Generator, y: float) -> float:
    """phi^-1(y) for the generator g."""
    return g.invert(y)


class Triple(NamedTuple):
    """Three evaluation points x, y, z."""
    x: float
    y: float
    z: float

    def ordered(self) -> "Triple":
        return Triple(*sorted((float(self.x), float(self.y), float(self.z))))

    def centroid(self) -> float:
        return (self.x + self.y + self.z) / 3.0

    def midpoints(self) -> Tuple[float, float, float]:
        return ((self.x + self.y) / 2.0, (self.y + self.z) / 2.0, (self.z + self.x) / 2.0)

    def spread(self) -> float:
        """(x-y)^2 + (y-z)^2 + (z-x)^2"""
        return (self.x - self.y) ** 2 + (self.y - self.z) ** 2 + (self.z - self.x) ** 2


@dataclass(frozen=True)
class PointSet:
    """
    Points x_1..x_n with optional weights of total mass 1.

    Attributes:
        values (tuple[float, ...]): the points, nonempty.
        weights (tuple[float, ...] | None): nonnegative weights summing to 1,
            or None for uniform weights 1/n.
    """
    values: Tuple[float, ...]
    weights: Optional[Tuple[float, ...]] = None

    def __post_init__(self) -> None:
        object.__setattr__(self, "values", tuple(float(v) for v in self.values))
        if not self.values:
            raise DomainError("a point set needs at least one value")
        if any(math.isnan(v) for v in self.values):
            raise DomainError("point set contains NaN")
        if self.weights is not None:
            weights = tuple(float(w) for w in self.weights)
            object.__setattr__(self, "weights", weights)
            if len(weights) != len(self.values):
                raise DomainError(f"{len(weights)} weights for {len(self.values)} values")
            if any(w < 0 for w in weights):
                raise DomainError("weights must be nonnegative")
            if abs(math.fsum(weights) - 1.0) > WEIGHT_SUM_TOL:
                raise DomainError(f"weights sum to {math.fsum(weights)!r}, not 1")

    @classmethod
    def of(cls, values: Iterable[float], weights: Optional[Iterable[float]] = None) -> "PointSet":
        return cls(tuple(values), None if weights is None else tuple(weights))

    def __len__(self) -> int:
        return len(self.values)

    def weight_array(self) -> np.ndarray:
        if self.weights is None:
            return np.full(len(self.values), 1.0 / len(self.values))
        return np.asarray(self.weights)

    def value_array(self) -> np.ndarray:
        return np.asarray(self.values)


def _as_points(pts) -> PointSet:
    return pts if isinstance(pts, PointSet) else PointSet.of(pts)


def _clamp(value: float, values: Sequence[float]) -> float:
    # rounding may push a mean a few ulps outside the hull of its arguments
    return float(min(max(value, min(values)), max(values)))


def qa_mean(g: Generator, pts) -> float:
    """
    Weighted quasi-arithmetic mean phi^-1(sum lambda_k phi(x_k)).

    Raises:
        DomainError: if a value lies outside the generator's domain.
    """
    pts = _as_points(pts)
    mapped = np.array([g.apply(v) for v in pts.values])
    average = float(np.dot(pts.weight_array(), mapped))
    return _clamp(g.invert(average), pts.values)


def power_mean(p: float, pts) -> float:
    """
    Weighted power mean of order p in [-inf, +inf].

    p = -inf and +inf give min and max, p = 0 the weighted geometric mean.

    Raises:
        DomainError: for nonpositive values when p <= 0, or negative values.
    """
    pts = _as_points(pts)
    x, w = pts.value_array(), pts.weight_array()
    if np.any(x < 0):
        raise DomainError("power means are defined for nonnegative values")
    if p <= 0 and np.any(x <= 0):
        raise DomainError(f"power mean of order {p} requires positive values")
    if p == -math.inf:
        return float(x.min())
    if p == math.inf:
        return float(x.max())
    if p == 0:
        result = math.exp(float(np.dot(w, np.log(x))))
    else:
        result = float(np.dot(w, x ** p)) ** (1.0 / p)
    return _clamp(result, pts.values)


def _require_positive(*args: float) -> None:
    for a in args:
        if not a > 0:
            raise DomainError(f"logarithmic and identric means need positive arguments, got {a!r}")


def log_mean2(a: float, b: float) -> float:
    """
    Logarithmic mean L(a, b) = (a - b) / (ln a - ln b), and a when a = b.

    Written as b * expm1(d) / d with d = ln a - ln b, which has no cancellation.
    """
    a, b = float(a), float(b)
    _require_positive(a, b)
    d = math.log(a) - math.log(b)
    if abs(d) <= LOG_MEAN2_GUARD:
        return a
    return _clamp(b * math.expm1(d) / d, (a, b))


def identric_mean(a: float, b: float) -> float:
    """
    Identric mean I(a, b) = e^-1 (b^b / a^a)^(1/(b-a)), and a when a = b.

    Evaluated in log space: ln I = ln a + d e^d / expm1(d) - 1 with d = ln(b/a).
    """
    a, b = float(a), float(b)
    _require_positive(a, b)
    d = math.log(b) - math.log(a)
    if abs(d) <= LOG_MEAN2_GUARD:
        return a
    log_mean = math.log(a) + d * math.exp(d) / math.expm1(d) - 1.0
    return _clamp(math.exp(log_mean), (a, b))


def _exp_divided_difference2(u: float, v: float) -> float:
    """exp[u, v] = (e^v - e^u) / (v - u), confluent value e^u at u = v."""
    d = v - u
    if d == 0:
        return math.exp(u)
    return math.exp(u) * math.expm1(d) / d


def _complete_homogeneous(t: Tuple[float, float, float], k: int) -> float:
    """h_k(t0, t1, t2), the sum of all degree-k monomials."""
    total = 0.0
    for i in range(k + 1):
        for j in range(k - i + 1):
            total += t[0] ** i * t[1] ** j * t[2] ** (k - i - j)
    return total


def exp_divided_difference3(u: float, v: float, w: float) -> float:
    """
    Second divided difference exp[u, v, w], continuous across coincidences.

    Nodes closer than CONFLUENT_SPREAD use the expansion about their centroid c,
    exp[u, v, w] = e^c * sum_k h_k(u - c, v - c, w - c) / (k + 2)!,
    where h_k is the complete homogeneous polynomial of degree k. Its limit at
    u = v = w is e^u / 2.
    """
    u, v, w = sorted((u, v, w))
    if w - u <= CONFLUENT_SPREAD:
        c = (u + v + w) / 3.0
        t = (u - c, v - c, w - c)
        series = math.fsum(
            _complete_homogeneous(t, k) / math.factorial(k + 2) for k in range(CONFLUENT_ORDER + 1)
        )
        return math.exp(c) * series
    return (_exp_divided_difference2(v, w) - _exp_divided_difference2(u, v)) / (w - u)


def log_mean3(a: float, b: float, c: float) -> float:
    """
    Neuman's logarithmic mean of three positive numbers.

    Equals 2a/(ln(a/b) ln(a/c)) + 2b/(ln(b/a) ln(b/c)) + 2c/(ln(c/a) ln(c/b))
    for distinct arguments and extends continuously to coincident ones.
    """
    a, b, c = float(a), float(b), float(c)
    _require_positive(a, b, c)
    value = 2.0 * exp_divided_difference3(math.log(a), math.log(b), math.log(c))
    return _clamp(value, (a, b, c))
