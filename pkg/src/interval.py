"""
Real intervals used as function domains, evaluation windows and search boxes.
"""

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError


@dataclass(frozen=True)
class Interval:
    """
    A real interval with independently open or closed ends.

    Attributes:
        lo, hi (float): endpoints, possibly infinite.
        closed_lo, closed_hi (bool): whether each endpoint belongs to the interval.
    """
    lo: float
    hi: float
    closed_lo: bool = True
    closed_hi: bool = True

    def __post_init__(self) -> None:
        if math.isnan(self.lo) or math.isnan(self.hi):
            raise DomainError("interval endpoints must not be NaN")
        if self.lo > self.hi:
            raise DomainError(f"empty interval: lo={self.lo} > hi={self.hi}")
        if self.lo == self.hi and not (self.closed_lo and self.closed_hi):
            raise DomainError(f"empty interval at {self.lo}")

    @classmethod
    def closed(cls, lo: float, hi: float) -> "Interval":
        return cls(float(lo), float(hi), True, True)

    @classmethod
    def open(cls, lo: float, hi: float) -> "Interval":
        return cls(float(lo), float(hi), False, False)

    @classmethod
    def real_line(cls) -> "Interval":
        return cls(-math.inf, math.inf, False, False)

    @classmethod
    def positive(cls, include_zero: bool = False) -> "Interval":
        return cls(0.0, math.inf, include_zero, False)

    @property
    def is_finite(self) -> bool:
        return math.isfinite(self.lo) and math.isfinite(self.hi)

    @property
    def width(self) -> float:
        return self.hi - self.lo

    def __contains__(self, x: float) -> bool:
        if x < self.lo or x > self.hi or x != x:
            return False
        if x == self.lo and not self.closed_lo:
            return False
        if x == self.hi and not self.closed_hi:
            return False
        return True

    def mask(self, xs: np.ndarray) -> np.ndarray:
        """Elementwise membership for an array of points."""
        xs = np.asarray(xs, dtype=float)
        lower = xs >= self.lo if self.closed_lo else xs > self.lo
        upper = xs <= self.hi if self.closed_hi else xs < self.hi
        return lower & upper

    def contains_interval(self, other: "Interval") -> bool:
        """True if every point of ``other`` lies in this interval."""
        lo_ok = other.lo > self.lo or (other.lo == self.lo and (self.closed_lo or not other.closed_lo))
        hi_ok = other.hi < self.hi or (other.hi == self.hi and (self.closed_hi or not other.closed_hi))
        return lo_ok and hi_ok

    def require(self, x: float, what: str = "argument") -> float:
        """Returns ``x`` as a float, raising DomainError if it lies outside."""
        x = float(x)
        if x not in self:
            raise DomainError(f"{what} {x!r} outside {self}")
        return x

    def nodes(self, n: int) -> np.ndarray:
        """
        Uniform grid of ``n`` points over a closed finite interval.

        Nodes are computed as lo + width * (i / (n - 1)), so the grid for
        2n - 1 points contains the grid for n points bit for bit.
        """
        if not self.is_finite:
            raise DomainError(f"cannot grid the unbounded interval {self}")
        if n < 2:
            raise DomainError(f"grid needs at least 2 points, got {n}")
        frac = np.arange(n, dtype=float) / (n - 1)
        return self.lo + self.width * frac

    def __str__(self) -> str:
        left = "[" if self.closed_lo else "("
        right = "]" if self.closed_hi else ")"
        return f"{left}{self.lo:g}, {self.hi:g}{right}"
