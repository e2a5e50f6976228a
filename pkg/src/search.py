"""
Counterexample Search Module

Looks for points where an inequality's residual goes negative:
- grid_scan evaluates the residual on every node of a box and ranks the nodes,
- refine runs a bounded Nelder-Mead descent (scipy) from a start point,
- find_counterexample combines both and certifies the best point by a fresh
  re-evaluation,
- sweep evaluates the residual at seeded uniform random points.

All randomness comes from numpy's default_rng (PCG64) seeded by the caller,
so every result is reproducible bit for bit.
"""

import itertools
import logging
import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Callable, List, Optional, Sequence, Tuple, Union

import numpy as np
from scipy.optimize import minimize

from .errors import DomainError, PopcheckError, SearchError
from .inequalities import EvaluatorParams, ResidualReport, build_objective, default_window, evaluate
from .interval import Interval

logger = logging.getLogger(__name__)

# exceptions that mark a single evaluation as failed rather than aborting a search
EVALUATION_ERRORS = (PopcheckError, ArithmeticError, ValueError)

Objective = Callable[[Sequence[float]], Union[ResidualReport, float]]


@dataclass(frozen=True)
class SearchRegion:
    """
    A closed box with a grid resolution per axis and a seed for random restarts.

    Attributes:
        intervals (tuple[Interval, ...]): one closed bounded interval per coordinate.
        resolution (int): grid nodes per axis, >= 2.
        seed (int): seed for randomized restarts.
    """
    intervals: Tuple[Interval, ...]
    resolution: int = 15
    seed: int = 0

    def __post_init__(self) -> None:
        object.__setattr__(self, "intervals", tuple(self.intervals))
        if not self.intervals:
            raise DomainError("a search region needs at least one axis")
        for interval in self.intervals:
            if not (interval.is_finite and interval.closed_lo and interval.closed_hi):
                raise DomainError(f"search axes must be closed and bounded, got {interval}")
        if self.resolution < 2:
            raise DomainError(f"grid resolution must be at least 2, got {self.resolution}")
        if self.seed < 0:
            raise DomainError(f"seed must be nonnegative, got {self.seed}")

    @classmethod
    def cube(cls, lo: float, hi: float, resolution: int = 15, seed: int = 0, dims: int = 3) -> "SearchRegion":
        return cls(tuple(Interval.closed(lo, hi) for _ in range(dims)), resolution, seed)

    @classmethod
    def from_bounds(cls, bounds: Sequence[float], resolution: int = 15, seed: int = 0) -> "SearchRegion":
        """From a flat list lo1 hi1 lo2 hi2 ..."""
        if len(bounds) % 2 or not bounds:
            raise DomainError(f"region bounds come in lo/hi pairs, got {len(bounds)} numbers")
        pairs = zip(bounds[::2], bounds[1::2])
        return cls(tuple(Interval.closed(lo, hi) for lo, hi in pairs), resolution, seed)

    @property
    def dims(self) -> int:
        return len(self.intervals)

    @property
    def bounds(self) -> List[Tuple[float, float]]:
        return [(iv.lo, iv.hi) for iv in self.intervals]

    def contains(self, point: Sequence[float]) -> bool:
        return len(point) == self.dims and all(x in iv for x, iv in zip(point, self.intervals))

    def clip(self, point: Sequence[float]) -> Tuple[float, ...]:
        return tuple(float(min(max(x, iv.lo), iv.hi)) for x, iv in zip(point, self.intervals))

    def axes(self) -> List[np.ndarray]:
        return [iv.nodes(self.resolution) for iv in self.intervals]


@dataclass(frozen=True)
class Candidate:
    point: Tuple[float, ...]
    residual: float
    report: Optional[ResidualReport] = None


@dataclass
class ScanResult:
    """
    Grid nodes ranked by residual (ascending, ties in lexicographic node order).

    Attributes:
        candidates: evaluated nodes.
        skipped: (node, error message) for nodes whose evaluation failed.
    """
    candidates: List[Candidate] = field(default_factory=list)
    skipped: List[Tuple[Tuple[float, ...], str]] = field(default_factory=list)

    @property
    def best(self) -> Candidate:
        if not self.candidates:
            raise SearchError("no grid node could be evaluated")
        return self.candidates[0]

    @property
    def evaluated(self) -> int:
        return len(self.candidates)


def _residual_of(value: Union[ResidualReport, float]) -> float:
    return value.residual if isinstance(value, ResidualReport) else float(value)


def _safe_call(objective: Objective, point: Sequence[float]) -> Tuple[Optional[Union[ResidualReport, float]], str]:
    try:
        value = objective(point)
    except EVALUATION_ERRORS as exc:
        return None, f"{type(exc).__name__}: {exc}"
    if math.isnan(_residual_of(value)):
        return None, "residual is NaN"
    return value, ""


def grid_scan(inequality_id: str, params: EvaluatorParams, region: SearchRegion) -> ScanResult:
    """
    Evaluates the residual at every node of the region's grid.

    Nodes whose evaluation fails are recorded in ``skipped``; nodes near the
    diagonal go through the evaluators' coincidence-guarded paths like any other.
    """
    objective = build_objective(inequality_id, params)
    result = ScanResult()
    for point in itertools.product(*region.axes()):
        point = tuple(float(x) for x in point)
        value, error = _safe_call(objective, point)
        if value is None:
            result.skipped.append((point, error))
            continue
        result.candidates.append(Candidate(point, _residual_of(value), value))
    # stable sort keeps the lexicographic node order among equal residuals
    result.candidates.sort(key=lambda c: c.residual)
    if result.skipped:
        logger.warning("%s scan: %d of %d nodes could not be evaluated, first: %s",
                       inequality_id, len(result.skipped), result.evaluated + len(result.skipped),
                       result.skipped[0][1])
    logger.debug("%s scan over %d nodes, minimum residual %s", inequality_id, result.evaluated,
                 result.candidates[0].residual if result.candidates else None)
    return result


@dataclass(frozen=True)
class Refinement:
    """
    Outcome of one refine call.

    failed is set when the objective could not be evaluated anywhere along the
    descent, in which case point is the start.
    """
    point: Tuple[float, ...]
    residual: float
    start_residual: float
    iterations: int
    failed: bool = False
    message: str = ""


def refine(start: Sequence[float], objective: Objective, region: SearchRegion,
           max_iter: int = 2000, tol: float = 1e-10) -> Refinement:
    """
    Bounded Nelder-Mead descent on the residual from ``start``.

    Stops after max_iter iterations or once the simplex is smaller than tol.
    Failing evaluations count as +inf, which shrinks the simplex away from
    them. The result lies in the region and is never worse than the start.
    """
    start = tuple(float(x) for x in start)
    if not region.contains(start):
        raise DomainError(f"refinement start {start} is outside the region")

    def residual(x: np.ndarray) -> float:
        value, _ = _safe_call(objective, region.clip(x))
        return math.inf if value is None else _residual_of(value)

    start_residual = residual(np.asarray(start))
    result = minimize(
        residual,
        np.asarray(start),
        method="Nelder-Mead",
        bounds=region.bounds,
        options={"xatol": tol, "fatol": math.inf, "maxiter": max_iter},
    )
    point = region.clip(result.x)
    value = residual(np.asarray(point))
    if not math.isfinite(value) and not math.isfinite(start_residual):
        logger.warning("refinement from %s failed: objective undefined at every vertex", start)
        return Refinement(start, start_residual, start_residual, int(result.nit), True, "objective failed at every vertex")
    if not value <= start_residual:
        point, value = start, start_residual
    logger.debug("refined %s -> %s: residual %g -> %g in %d iterations", start, point, start_residual, value, result.nit)
    return Refinement(point, value, start_residual, int(result.nit), False, str(result.message))


@dataclass(frozen=True)
class SearchConfig:
    """
    Attributes:
        k: number of best grid nodes refined.
        max_iter: Nelder-Mead iteration cap per refinement.
        tol: simplex size at which a refinement stops.
        random_restarts: extra refinements from uniform random points drawn
            with the region's seed.
    """
    k: int = 5
    max_iter: int = 2000
    tol: float = 1e-10
    random_restarts: int = 0

    def __post_init__(self) -> None:
        if self.k < 1:
            raise DomainError(f"k must be at least 1, got {self.k}")
        if self.max_iter < 1:
            raise DomainError(f"max_iter must be at least 1, got {self.max_iter}")
        if not self.tol > 0:
            raise DomainError(f"tol must be positive, got {self.tol}")
        if self.random_restarts < 0:
            raise DomainError(f"random_restarts must be nonnegative, got {self.random_restarts}")


class CertificateStatus(Enum):
    VIOLATION_CERTIFIED = "violation_certified"
    NO_VIOLATION_FOUND = "no_violation_found"


@dataclass(frozen=True)
class Certificate:
    """
    Best point found by a search, re-evaluated from scratch.

    VIOLATION_CERTIFIED requires the fresh residual to be below -tolerance.
    NO_VIOLATION_FOUND makes no completeness claim; scanned_minimum and the
    node counts are the evidence.
    """
    inequality_id: str
    point: Tuple[float, ...]
    residual: float
    lhs: float
    rhs: float
    tolerance: float
    status: CertificateStatus
    scanned_minimum: float
    nodes_evaluated: int
    nodes_skipped: int
    refinements: int
    report: ResidualReport = field(compare=False, default=None)

    @property
    def violation(self) -> bool:
        return self.status is CertificateStatus.VIOLATION_CERTIFIED


def _check_region(params: EvaluatorParams, region: SearchRegion) -> None:
    if params.f is None:
        return
    for interval in region.intervals:
        if not params.f.domain.contains_interval(interval):
            raise DomainError(f"region axis {interval} is not inside the domain {params.f.domain} of {params.f.label}")


def find_counterexample(inequality_id: str, params: EvaluatorParams, region: SearchRegion,
                        config: SearchConfig = SearchConfig()) -> Certificate:
    """
    Grid scan, refinement from the k best nodes (and optional random restarts),
    then certification of the best point by a fresh evaluation.

    Raises:
        SearchError: if no grid node could be evaluated.
    """
    _check_region(params, region)
    scan = grid_scan(inequality_id, params, region)
    scanned = scan.best
    starts = [c.point for c in scan.candidates[:config.k]]
    if config.random_restarts:
        rng = np.random.default_rng(region.seed)
        lows = np.array([iv.lo for iv in region.intervals])
        highs = np.array([iv.hi for iv in region.intervals])
        for draw in rng.uniform(lows, highs, size=(config.random_restarts, region.dims)):
            starts.append(region.clip(draw))

    objective = build_objective(inequality_id, params)
    best_point, best_residual = scanned.point, scanned.residual
    for start in starts:
        refined = refine(start, objective, region, config.max_iter, config.tol)
        if not refined.failed and refined.residual < best_residual:
            best_point, best_residual = refined.point, refined.residual

    fresh = evaluate(inequality_id, params, best_point)
    violated = fresh.residual < -fresh.tolerance
    status = CertificateStatus.VIOLATION_CERTIFIED if violated else CertificateStatus.NO_VIOLATION_FOUND
    logger.info("%s search: %s at %s (residual %g)", inequality_id, status.value, best_point, fresh.residual)
    return Certificate(
        inequality_id=inequality_id,
        point=best_point,
        residual=fresh.residual,
        lhs=fresh.lhs,
        rhs=fresh.rhs,
        tolerance=fresh.tolerance,
        status=status,
        scanned_minimum=scanned.residual,
        nodes_evaluated=scan.evaluated,
        nodes_skipped=len(scan.skipped),
        refinements=len(starts),
        report=fresh,
    )


@dataclass(frozen=True)
class SweepSummary:
    """
    Residual statistics over seeded random points.

    worst is the first report attaining the minimum residual.
    """
    inequality_id: str
    samples: int
    evaluated: int
    skipped: int
    violations: int
    min_residual: float
    mean_residual: float
    worst: Optional[ResidualReport]
    seed: int
    window: Interval

    @property
    def holds(self) -> bool:
        return self.violations == 0 and self.evaluated > 0


def sweep(inequality_id: str, params: EvaluatorParams, samples: int, seed: int,
          window: Optional[Interval] = None, dims: int = 3) -> SweepSummary:
    """
    Evaluates the inequality at ``samples`` points drawn uniformly from
    window^dims with default_rng(seed).
    """
    if samples < 1:
        raise DomainError(f"sample count must be at least 1, got {samples}")
    window = default_window(inequality_id, params) if window is None else window
    if not window.is_finite:
        raise DomainError(f"sweep window {window} must be bounded")
    objective = build_objective(inequality_id, params)
    rng = np.random.default_rng(seed)
    points = rng.uniform(window.lo, window.hi, size=(samples, dims))
    residuals: List[float] = []
    worst: Optional[ResidualReport] = None
    violations = skipped = 0
    for row in points:
        value, _ = _safe_call(objective, tuple(float(x) for x in row))
        if value is None:
            skipped += 1
            continue
        residuals.append(value.residual)
        if not value.holds:
            violations += 1
        if worst is None or value.residual < worst.residual:
            worst = value
    if skipped:
        logger.warning("%s sweep: %d of %d points could not be evaluated", inequality_id, skipped, samples)
    summary = SweepSummary(
        inequality_id=inequality_id,
        samples=samples,
        evaluated=len(residuals),
        skipped=skipped,
        violations=violations,
        min_residual=min(residuals) if residuals else math.nan,
        mean_residual=math.fsum(residuals) / len(residuals) if residuals else math.nan,
        worst=worst,
        seed=seed,
        window=window,
    )
    logger.info("%s sweep of %d points: %d violations, min residual %g", inequality_id, samples,
                violations, summary.min_residual)
    return summary
