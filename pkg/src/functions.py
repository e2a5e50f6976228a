"""
Test functions for the inequality evaluators.

A FunctionSpec names one entry of a small closed registry (power, exp, gamma,
hyp2f1, ...) together with its parameters, its domain and a finite default
window used when sampling. Specs are immutable and hashable; affine
modifications and domain restrictions return new specs.
"""

import logging
import math
from dataclasses import dataclass, field, replace
from functools import lru_cache
from typing import Callable, Dict, NamedTuple, Optional, Tuple

import numpy as np

from .errors import DomainError, RegistryError
from .interval import Interval
from .specfun import HypergeometricParams, gamma, hyp2f1, lp_ball_volume

logger = logging.getLogger(__name__)

ScalarFn = Callable[[float], float]


class _Kind(NamedTuple):
    arity: Tuple[int, Optional[int]]  # (min, max) parameter count, max None = unbounded
    build: Callable[[Tuple[float, ...]], ScalarFn]
    build_many: Optional[Callable[[Tuple[float, ...]], Callable[[np.ndarray], np.ndarray]]]
    domain: Callable[[Tuple[float, ...]], Interval]
    window: Callable[[Tuple[float, ...]], Interval]


def _power_domain(params: Tuple[float, ...]) -> Interval:
    r = params[0]
    if r == int(r) and r >= 0:
        return Interval.real_line()
    if r > 0:
        return Interval.positive(include_zero=True)
    return Interval.positive()


def _power_window(params: Tuple[float, ...]) -> Interval:
    domain = _power_domain(params)
    if domain.lo == -math.inf:
        return Interval.closed(-1.0, 1.0)
    if domain.closed_lo:
        return Interval.closed(0.0, 10.0)
    return Interval.closed(0.1, 10.0)


def _hyp_params(params: Tuple[float, ...]) -> HypergeometricParams:
    return HypergeometricParams(*params)


def _breckner(params: Tuple[float, ...]) -> ScalarFn:
    s, a, b, c = params
    if not 0 < s <= 1:
        raise DomainError(f"breckner family needs 0 < s <= 1, got {s}")
    return lambda t: a if t == 0 else b * t ** s + c


def _breckner_many(params: Tuple[float, ...]):
    s, a, b, c = params
    return lambda xs: np.where(xs == 0, a, b * np.power(np.maximum(xs, 0.0), s) + c)


_REAL = lambda params: Interval.real_line()
_POSITIVE = lambda params: Interval.positive()
_NONNEGATIVE = lambda params: Interval.positive(include_zero=True)
_UNIT_OPEN = lambda params: Interval.open(-1.0, 1.0)

_KINDS: Dict[str, _Kind] = {
    "identity": _Kind((0, 0), lambda p: lambda x: x, lambda p: lambda xs: xs,
                      _REAL, lambda p: Interval.closed(-1.0, 1.0)),
    "exp": _Kind((0, 0), lambda p: math.exp, lambda p: np.exp,
                 _REAL, lambda p: Interval.closed(-2.0, 2.0)),
    "log": _Kind((0, 0), lambda p: math.log, lambda p: np.log,
                 _POSITIVE, lambda p: Interval.closed(0.1, 10.0)),
    "neglog": _Kind((0, 0), lambda p: lambda x: -math.log(x), lambda p: lambda xs: -np.log(xs),
                    _POSITIVE, lambda p: Interval.closed(0.1, 10.0)),
    "abs": _Kind((0, 0), lambda p: abs, lambda p: np.abs,
                 _REAL, lambda p: Interval.closed(-1.0, 1.0)),
    "sin": _Kind((0, 0), lambda p: math.sin, lambda p: np.sin,
                 _REAL, lambda p: Interval.closed(0.0, math.pi)),
    "power": _Kind((1, 1), lambda p: lambda x: x ** p[0], lambda p: lambda xs: np.power(xs, p[0]),
                   _power_domain, _power_window),
    "polynomial": _Kind((1, None),
                        lambda p: lambda x: float(np.polynomial.polynomial.polyval(x, p)),
                        lambda p: lambda xs: np.polynomial.polynomial.polyval(xs, p),
                        _REAL, lambda p: Interval.closed(-1.0, 1.0)),
    "constant": _Kind((1, 1), lambda p: lambda x: p[0], lambda p: lambda xs: np.full(np.shape(xs), p[0]),
                      _REAL, lambda p: Interval.closed(-1.0, 1.0)),
    "gamma": _Kind((0, 0), lambda p: gamma, None,
                   _POSITIVE, lambda p: Interval.closed(0.1, 5.0)),
    "hyp2f1": _Kind((3, 3), lambda p: lambda x: hyp2f1(_hyp_params(p), x), None,
                    _UNIT_OPEN, lambda p: Interval.closed(0.05, 0.95)),
    "recip_hyp2f1": _Kind((3, 3), lambda p: lambda x: 1.0 / hyp2f1(_hyp_params(p), x), None,
                          _UNIT_OPEN, lambda p: Interval.closed(0.05, 0.95)),
    "lp_volume": _Kind((1, 1), lambda p: lambda q: lp_ball_volume(p[0], q), None,
                       _POSITIVE, lambda p: Interval.closed(1.0, 10.0)),
    "breckner": _Kind((4, 4), _breckner, _breckner_many,
                      _NONNEGATIVE, lambda p: Interval.closed(0.0, 10.0)),
}

FUNCTION_NAMES = tuple(sorted(_KINDS))


@lru_cache(maxsize=None)
def _scalar(name: str, params: Tuple[float, ...]) -> ScalarFn:
    return _KINDS[name].build(params)


@lru_cache(maxsize=None)
def _vector(name: str, params: Tuple[float, ...]):
    kind = _KINDS[name]
    if kind.build_many is not None:
        return kind.build_many(params)
    return np.vectorize(_scalar(name, params), otypes=[float])


@dataclass(frozen=True)
class FunctionSpec:
    """
    A registry function x -> scale * base(x) + offset on a domain.

    Attributes:
        name (str): registry kind, e.g. "power" or "hyp2f1".
        params (tuple[float, ...]): kind parameters, e.g. (2.0,) for x^2.
        domain (Interval): where the function may be evaluated.
        window (Interval): finite default sampling window inside the domain.
        scale, offset (float): affine modification of the base function.
    """
    name: str
    params: Tuple[float, ...] = ()
    domain: Interval = field(default=None)
    window: Interval = field(default=None)
    scale: float = 1.0
    offset: float = 0.0

    def __post_init__(self) -> None:
        kind = _KINDS.get(self.name)
        if kind is None:
            raise RegistryError(f"unknown function {self.name!r}; known: {', '.join(FUNCTION_NAMES)}")
        params = tuple(float(p) for p in self.params)
        object.__setattr__(self, "params", params)
        lo, hi = kind.arity
        if len(params) < lo or (hi is not None and len(params) > hi):
            raise RegistryError(f"function {self.name!r} takes {lo}..{hi or 'n'} parameters, got {len(params)}")
        if self.name in ("hyp2f1", "recip_hyp2f1"):
            _hyp_params(params)
        natural = kind.domain(params)
        if self.domain is None:
            object.__setattr__(self, "domain", natural)
        elif not natural.contains_interval(self.domain):
            raise DomainError(f"{self.domain} is not inside the domain {natural} of {self.name}")
        if self.window is None:
            window = kind.window(params)
            if not self.domain.contains_interval(window):
                window = self.domain if self.domain.is_finite else window
            object.__setattr__(self, "window", window)

    @property
    def label(self) -> str:
        base = ":".join([self.name] + [f"{p:g}" for p in self.params])
        if self.scale != 1.0:
            base = f"{self.scale:g}*{base}"
        if self.offset != 0.0:
            base = f"{base}{self.offset:+g}"
        return base

    @property
    def grid_interval(self) -> Interval:
        """The domain when it is closed and bounded, otherwise the default window."""
        if self.domain.is_finite and self.domain.closed_lo and self.domain.closed_hi:
            return self.domain
        return self.window

    @property
    def hypergeometric_params(self) -> HypergeometricParams:
        if self.name not in ("hyp2f1", "recip_hyp2f1"):
            raise DomainError(f"{self.label} is not a hypergeometric function")
        return _hyp_params(self.params)

    def __call__(self, x: float) -> float:
        x = self.domain.require(x, f"{self.label} argument")
        return self.scale * _scalar(self.name, self.params)(x) + self.offset

    def evaluate_many(self, xs) -> np.ndarray:
        """Vectorized evaluation; every point must lie in the domain."""
        xs = np.asarray(xs, dtype=float)
        if not np.all(self.domain.mask(xs)):
            bad = xs[~self.domain.mask(xs)].ravel()[0]
            raise DomainError(f"{self.label} argument {bad!r} outside {self.domain}")
        return self.scale * _vector(self.name, self.params)(xs) + self.offset

    def affine(self, scale: float = 1.0, offset: float = 0.0) -> "FunctionSpec":
        """Returns x -> scale * self(x) + offset."""
        return replace(self, scale=self.scale * scale, offset=self.offset * scale + offset)

    def restricted(self, lo: float, hi: float, closed: bool = True) -> "FunctionSpec":
        """Returns the same function on [lo, hi] (or (lo, hi))."""
        interval = Interval.closed(lo, hi) if closed else Interval.open(lo, hi)
        return replace(self, domain=interval, window=Interval.closed(lo, hi) if closed else None)

    def __str__(self) -> str:
        return f"{self.label} on {self.domain}"


def function(name: str, *params: float) -> FunctionSpec:
    """Shorthand constructor, e.g. function("power", 2)."""
    return FunctionSpec(name, tuple(params))
