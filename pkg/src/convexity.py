"""
Convexity Classification Module

Grid-based tests for:
- ordinary midpoint convexity and concavity,
- (M_phi, M_psi)-convexity through the Aczel transform psi o f o phi^-1,
- h-convexity for the four weight functions h of the Breckner,
  Godunova-Levin and P classes (plus h = identity), together with numerical
  checks of the properties of h the inequalities rely on.

Every verdict here is grid-certified only: it states what holds on the nodes
that were evaluated, and reports the grid size with it.
"""

import logging
from dataclasses import dataclass, field
from enum import Enum
from functools import lru_cache
from typing import Callable, FrozenSet, NamedTuple, Optional, Tuple

import numpy as np

from .errors import DomainError
from .functions import FunctionSpec
from .interval import Interval
from .means import Generator

logger = logging.getLogger(__name__)

DEFAULT_TOL = 1e-9
# nodes of the grid interval on which f must land in psi's domain
RANGE_CHECK_NODES = 201
H1_GRID = 10_000


def scaled_tolerance(tol: float, values: np.ndarray) -> float:
    """Absolute tolerance tol scaled by max(1, largest |value|)."""
    finite = np.abs(values[np.isfinite(values)])
    return tol * max(1.0, float(finite.max()) if finite.size else 1.0)


def _first_argmin(values: np.ndarray) -> Tuple[int, ...]:
    # np.argmin returns the first minimum in C order, i.e. the
    # lexicographically smallest index among ties
    return tuple(int(i) for i in np.unravel_index(int(np.argmin(values)), values.shape))


class Defect(NamedTuple):
    """
    Minimum of a defect expression over a grid.

    Attributes:
        value: the minimum; nonnegative (within tolerance) when the property holds.
        witness: the grid point attaining it.
        tolerance: absolute tolerance used for the verdict.
        grid_n: nodes per grid axis.
    """
    value: float
    witness: Tuple[float, ...]
    tolerance: float
    grid_n: int

    @property
    def holds(self) -> bool:
        return self.value >= -self.tolerance


# ---------------------------------------------------------------------------
# h functions
# ---------------------------------------------------------------------------

class HKind(Enum):
    IDENTITY = "identity"
    POWER = "power"
    RECIPROCAL = "reciprocal"
    ONE = "one"


class HProperty(Enum):
    H1_CONDITION = "h1_condition"
    CONCAVE = "concave"
    SUPERMULTIPLICATIVE = "supermultiplicative"
    SUBMULTIPLICATIVE = "submultiplicative"


_DECLARED = {
    HKind.IDENTITY: frozenset({HProperty.CONCAVE, HProperty.SUPERMULTIPLICATIVE, HProperty.SUBMULTIPLICATIVE}),
    HKind.POWER: frozenset({HProperty.CONCAVE, HProperty.SUPERMULTIPLICATIVE, HProperty.SUBMULTIPLICATIVE}),
    HKind.RECIPROCAL: frozenset({HProperty.SUPERMULTIPLICATIVE, HProperty.SUBMULTIPLICATIVE}),
    HKind.ONE: frozenset({HProperty.CONCAVE, HProperty.SUPERMULTIPLICATIVE, HProperty.SUBMULTIPLICATIVE}),
}


@dataclass(frozen=True)
class HSpec:
    """
    A weight function h: (0, 1) -> (0, inf).

    Kinds: identity (ordinary convexity), power with exponent s in (0, 1]
    (Breckner s-convexity), reciprocal (Godunova-Levin) and one (P-convexity).
    Construction verifies h(1 - l) + h(l) >= 1 on a 10^4-point grid.
    """
    kind: HKind
    s: float = 1.0
    declared_properties: FrozenSet[HProperty] = field(default=None, compare=False)

    def __post_init__(self) -> None:
        if self.kind is HKind.POWER and not 0 < self.s <= 1:
            raise DomainError(f"Breckner exponent s must lie in (0, 1], got {self.s!r}")
        if self.kind is not HKind.POWER:
            object.__setattr__(self, "s", 1.0)
        if self.declared_properties is None:
            object.__setattr__(self, "declared_properties", _DECLARED[self.kind])
        check = h_property_check(self, HProperty.H1_CONDITION, H1_GRID)
        if not check.holds:
            raise DomainError(f"h = {self.name} violates h(1-l) + h(l) >= 1 (slack {check.value:g})")

    @classmethod
    def identity(cls) -> "HSpec":
        return cls(HKind.IDENTITY)

    @classmethod
    def power(cls, s: float) -> "HSpec":
        return cls(HKind.POWER, float(s))

    @classmethod
    def reciprocal(cls) -> "HSpec":
        return cls(HKind.RECIPROCAL)

    @classmethod
    def one(cls) -> "HSpec":
        return cls(HKind.ONE)

    @property
    def name(self) -> str:
        return f"power:{self.s:g}" if self.kind is HKind.POWER else self.kind.value

    def values(self, lam) -> np.ndarray:
        """Vectorized h on an array of points in (0, 1)."""
        lam = np.asarray(lam, dtype=float)
        if np.any((lam <= 0) | (lam >= 1)):
            raise DomainError("h is defined on the open interval (0, 1)")
        if self.kind is HKind.IDENTITY:
            return lam
        if self.kind is HKind.POWER:
            return np.power(lam, self.s)
        if self.kind is HKind.RECIPROCAL:
            return 1.0 / lam
        return np.ones_like(lam)

    def __call__(self, lam: float) -> float:
        return h_eval(self, lam)


def h_eval(h: HSpec, lam: float) -> float:
    """
    h(lam) for 0 < lam < 1.

    Raises:
        DomainError: at or outside the endpoints.
    """
    lam = float(lam)
    if not 0 < lam < 1:
        raise DomainError(f"h is defined on (0, 1), got {lam!r}")
    if h.kind is HKind.IDENTITY:
        return lam
    if h.kind is HKind.POWER:
        return lam ** h.s
    if h.kind is HKind.RECIPROCAL:
        return 1.0 / lam
    return 1.0


def open_unit_grid(grid_n: int) -> np.ndarray:
    """l_i = i / (grid_n + 1), i = 1..grid_n: the open interval (0, 1) with margin."""
    return np.arange(1, grid_n + 1, dtype=float) / (grid_n + 1)


@lru_cache(maxsize=256)
def h_property_check(h: HSpec, prop: HProperty, grid_n: int = 201) -> Defect:
    """
    Verifies a property of h on a grid over (0, 1) and returns the minimal slack.

    Pairs are used for concavity (midpoints) and for super/submultiplicativity
    (products stay in (0, 1)).
    """
    if grid_n < 3:
        raise DomainError(f"property checks need grid_n >= 3, got {grid_n}")
    lam = open_unit_grid(grid_n)
    hl = h.values(lam)
    if prop is HProperty.H1_CONDITION:
        slack = h.values(1.0 - lam) + hl - 1.0
        scale_values = hl
    else:
        u, v = lam[:, None], lam[None, :]
        hu, hv = hl[:, None], hl[None, :]
        if prop is HProperty.CONCAVE:
            slack = h.values((u + v) / 2.0) - (hu + hv) / 2.0
        elif prop is HProperty.SUPERMULTIPLICATIVE:
            slack = h.values(u * v) - hu * hv
        else:
            slack = hu * hv - h.values(u * v)
        scale_values = hu * hv
    index = _first_argmin(slack)
    witness = tuple(float(lam[i]) for i in index)
    result = Defect(float(slack[index]), witness, scaled_tolerance(DEFAULT_TOL, scale_values), grid_n)
    logger.debug("h=%s %s on %d nodes: slack %g", h.name, prop.value, grid_n, result.value)
    return result


# ---------------------------------------------------------------------------
# Midpoint convexity and the Aczel transform
# ---------------------------------------------------------------------------

def _evaluate_on(g, xs: np.ndarray) -> np.ndarray:
    many = getattr(g, "evaluate_many", None)
    if many is not None:
        return np.asarray(many(xs), dtype=float)
    return np.array([g(float(x)) for x in xs])


@dataclass(frozen=True)
class MidpointDefects:
    """
    Convexity and concavity defects of g on a grid over a closed interval.

    convex: min over grid pairs of (g(u) + g(v))/2 - g((u + v)/2)
    concave: min over grid pairs of g((u + v)/2) - (g(u) + g(v))/2
    """
    convex: Defect
    concave: Defect


def midpoint_defects(g: Callable[[float], float], interval: Interval, grid_n: int) -> MidpointDefects:
    """
    Both midpoint defects of g, evaluated on the grid of grid_n nodes.

    The midpoints of grid nodes i and j are node i + j of the grid with
    2 * grid_n - 1 nodes, so g is evaluated once per half-grid node.
    """
    if grid_n < 3:
        raise DomainError(f"midpoint defects need grid_n >= 3, got {grid_n}")
    half_nodes = interval.nodes(2 * grid_n - 1)
    half = _evaluate_on(g, half_nodes)
    values = half[::2]
    nodes = half_nodes[::2]
    mids = half[np.add.outer(np.arange(grid_n), np.arange(grid_n))]
    chord = (values[:, None] + values[None, :]) / 2.0
    tolerance = scaled_tolerance(DEFAULT_TOL, half)

    def _defect(matrix: np.ndarray) -> Defect:
        i, j = _first_argmin(matrix)
        return Defect(float(matrix[i, j]), (float(nodes[i]), float(nodes[j])), tolerance, grid_n)

    return MidpointDefects(convex=_defect(chord - mids), concave=_defect(mids - chord))


def midpoint_convexity_defect(g: Callable[[float], float], interval: Interval, grid_n: int) -> Defect:
    """
    min over grid pairs (u, v) of [g(u) + g(v)]/2 - g((u + v)/2).

    Nonnegative within tolerance iff g is midpoint-convex on the grid.
    """
    return midpoint_defects(g, interval, grid_n).convex


class AczelTransform:
    """
    The composition t -> psi(f(phi^-1(t))) on phi(I).

    Args:
        f: the function under study, with domain I.
        phi: generator of the mean on the domain side.
        psi: generator of the mean on the range side.
    """

    def __init__(self, f: FunctionSpec, phi: Generator, psi: Generator) -> None:
        if not phi.domain.contains_interval(f.domain):
            raise DomainError(f"the {phi.name} generator is not defined on all of {f.domain}")
        if psi.domain != Interval.real_line():
            values = f.evaluate_many(f.grid_interval.nodes(RANGE_CHECK_NODES))
            outside = ~psi.domain.mask(values)
            if np.any(outside):
                raise DomainError(f"{f.label} takes the value {values[outside][0]!r} on {f.grid_interval}, "
                                  f"outside the domain {psi.domain} of the {psi.name} generator")
        self.f = f
        self.phi = phi
        self.psi = psi
        self.domain = phi.image(f.domain)

    def __call__(self, t: float) -> float:
        return self.psi.apply(self.f(self.phi.invert(t)))

    def evaluate_many(self, ts: np.ndarray) -> np.ndarray:
        return np.array([self(float(t)) for t in np.asarray(ts, dtype=float)])

    def __repr__(self) -> str:
        return f"AczelTransform({self.psi.name} o {self.f.label} o {self.phi.name}^-1 on {self.domain})"


def aczel_transform(f: FunctionSpec, phi: Generator, psi: Generator) -> AczelTransform:
    """
    psi o f o phi^-1 and its domain phi(I).

    Raises:
        DomainError: if phi is not defined on the whole domain of f.
    """
    return AczelTransform(f, phi, psi)


class Shape(Enum):
    CONVEX = "convex"
    CONCAVE = "concave"
    NEITHER = "neither"


@dataclass(frozen=True)
class ConvexityReport:
    """
    Grid verdict on the (M_phi, M_psi)-convexity of f.

    Attributes:
        verdict: CONVEX, CONCAVE or NEITHER for f; CONVEX when both hold.
        affine: both convexity and concavity hold on the grid.
        convex_defect, concave_defect: defects in the (M_phi, M_psi) sense,
            i.e. after translating through the direction of psi.
        transform_verdict: the ordinary verdict for psi o f o phi^-1.
        interval: phi(I), the grid domain.
    """
    verdict: Shape
    affine: bool
    convex_defect: Defect
    concave_defect: Defect
    transform_verdict: Shape
    interval: Interval
    grid_n: int


def _shape(convex: bool, concave: bool) -> Shape:
    if convex:
        return Shape.CONVEX
    if concave:
        return Shape.CONCAVE
    return Shape.NEITHER


def mn_convexity_check(f: FunctionSpec, phi: Generator, psi: Generator, grid_n: int = 201) -> ConvexityReport:
    """
    Classifies f as (M_phi, M_psi)-convex, -concave or neither.

    For increasing psi, f is (M_phi, M_psi)-convex iff the Aczel transform is
    convex; for decreasing psi, iff the transform is concave. The grid covers
    phi(J), where J is f's grid interval (its domain if closed and bounded,
    otherwise its default window).
    """
    transform = aczel_transform(f, phi, psi)
    interval = phi.image(f.grid_interval)
    if not (interval.is_finite and interval.closed_lo and interval.closed_hi):
        raise DomainError(f"{phi.name} maps {f.grid_interval} onto the unbounded {interval}; restrict {f.label} first")
    raw = midpoint_defects(transform, interval, grid_n)
    if psi.increasing:
        convex, concave = raw.convex, raw.concave
    else:
        convex, concave = raw.concave, raw.convex
    report = ConvexityReport(
        verdict=_shape(convex.holds, concave.holds),
        affine=convex.holds and concave.holds,
        convex_defect=convex,
        concave_defect=concave,
        transform_verdict=_shape(raw.convex.holds, raw.concave.holds),
        interval=interval,
        grid_n=grid_n,
    )
    logger.info("%s is (%s, %s)-%s on %d nodes", f, phi.name, psi.name, report.verdict.value, grid_n)
    return report


# ---------------------------------------------------------------------------
# h-convexity
# ---------------------------------------------------------------------------

def _bounded(f: FunctionSpec, interval: Optional[Interval]) -> Interval:
    interval = f.grid_interval if interval is None else interval
    if not interval.is_finite:
        raise DomainError(f"h-convexity grids need a bounded interval; restrict {f.label} first")
    if not f.domain.contains_interval(interval):
        raise DomainError(f"{interval} is not inside the domain {f.domain} of {f.label}")
    return Interval.closed(interval.lo, interval.hi) if interval.closed_lo and interval.closed_hi else interval


def _interior_nodes(interval: Interval, grid_n: int) -> np.ndarray:
    if interval.closed_lo and interval.closed_hi:
        return interval.nodes(grid_n)
    # open ends: stay off the endpoints by one grid step
    return interval.lo + interval.width * open_unit_grid(grid_n)


def h_pair_defect(f: FunctionSpec, g: FunctionSpec, h: HSpec, grid_n: int = 41,
                  interval: Optional[Interval] = None) -> Defect:
    """
    min over grid (x, y, l) of h(1 - l) g(x) + h(l) g(y) - f((1 - l) x + l y).

    With g = f this is the h-convexity defect of f.
    """
    if grid_n < 3:
        raise DomainError(f"h-convexity grids need grid_n >= 3, got {grid_n}")
    interval = _bounded(f, interval)
    if not g.domain.contains_interval(interval):
        raise DomainError(f"{interval} is not a common domain of {f.label} and {g.label}")
    xs = _interior_nodes(interval, grid_n)
    lam = open_unit_grid(grid_n)
    gx = g.evaluate_many(xs)
    x, y, l = xs[:, None, None], xs[None, :, None], lam[None, None, :]
    # clip rounding of the convex combination back into the interval
    combo = np.clip((1.0 - l) * x + l * y, xs[0], xs[-1])
    rhs = h.values(1.0 - lam)[None, None, :] * gx[:, None, None] + h.values(lam)[None, None, :] * gx[None, :, None]
    lhs = f.evaluate_many(combo)
    defect = rhs - lhs
    i, j, k = _first_argmin(defect)
    tolerance = scaled_tolerance(DEFAULT_TOL, np.concatenate([gx, lhs.ravel()]))
    result = Defect(float(defect[i, j, k]), (float(xs[i]), float(xs[j]), float(lam[k])), tolerance, grid_n)
    logger.debug("h-pair defect of (%s, %s) with h=%s: %g", f.label, g.label, h.name, result.value)
    return result


def h_convexity_defect(f: FunctionSpec, h: HSpec, grid_n: int = 41,
                       interval: Optional[Interval] = None) -> Defect:
    """
    min over grid (x, y, l) of h(1 - l) f(x) + h(l) f(y) - f((1 - l) x + l y).

    f is grid-certified h-convex iff the result holds (>= -tolerance).
    """
    return h_pair_defect(f, f, h, grid_n, interval)
