"""
Inequality Residual Module

One evaluator per inequality. Each returns a ResidualReport whose residual
lhs - rhs is arranged so that a nonnegative residual means the inequality
holds. Three-point evaluators sort their triple first and are therefore
symmetric bit for bit.

Hypotheses that do not prevent evaluation (parameter conditions, properties of
h, the sign of f) are advisory: the residual is computed regardless and the
failed checks are listed in ``hypothesis_flags``.
"""

import logging
import math
import warnings
from dataclasses import dataclass, field, replace
from enum import Enum
from functools import lru_cache
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from .convexity import ConvexityReport, Defect, HProperty, HSpec, Shape, h_pair_defect, h_property_check
from .errors import DomainError, RegistryError
from .functions import FunctionSpec
from .interval import Interval
from .means import Generator, PointSet, Triple, log_mean2, log_mean3, qa_mean
from .specfun import AUTO_STEP, CurvatureBounds, HypergeometricParams, curvature_bounds, hyp2f1, ln_lp_ball_volume

logger = logging.getLogger(__name__)

DEFAULT_TOL = 1e-9
CURVATURE_GRID = 201


class Verdict(Enum):
    HOLDS = "holds"
    VIOLATED = "violated"


@dataclass(frozen=True)
class ResidualReport:
    """
    Outcome of one inequality evaluation.

    Attributes:
        inequality_id (str): registry id, e.g. "popoviciu".
        point (tuple[float, ...]): the evaluation point as given.
        lhs, rhs (float): the two sides; residual = lhs - rhs.
        verdict (Verdict): HOLDS iff residual >= -tolerance.
        tolerance (float): DEFAULT_TOL scaled by max(1, |lhs|, |rhs|).
        hypothesis_flags (tuple[str, ...]): advisory hypothesis failures.
        details (dict[str, float]): evaluator-specific intermediate values.
    """
    inequality_id: str
    point: Tuple[float, ...]
    lhs: float
    rhs: float
    residual: float
    verdict: Verdict
    tolerance: float
    hypothesis_flags: Tuple[str, ...] = ()
    details: Dict[str, float] = field(default_factory=dict, compare=False)

    @property
    def holds(self) -> bool:
        return self.verdict is Verdict.HOLDS


def make_report(inequality_id: str, point: Sequence[float], lhs: float, rhs: float,
                flags: Sequence[str] = (), details: Optional[Dict[str, float]] = None,
                tol: float = DEFAULT_TOL) -> ResidualReport:
    """Builds a report from its two sides; NaN residuals count as violations."""
    lhs, rhs = float(lhs), float(rhs)
    residual = lhs - rhs
    tolerance = tol * max(1.0, abs(lhs), abs(rhs))
    verdict = Verdict.HOLDS if residual >= -tolerance else Verdict.VIOLATED
    return ResidualReport(
        inequality_id=inequality_id,
        point=tuple(float(v) for v in point),
        lhs=lhs,
        rhs=rhs,
        residual=residual,
        verdict=verdict,
        tolerance=tolerance,
        hypothesis_flags=tuple(flags),
        details=dict(details or {}),
    )


@lru_cache(maxsize=None)
def _warn_once(message: str) -> None:
    warnings.warn(message, RuntimeWarning, stacklevel=4)
    logger.warning(message)


def _flag(flags: List[str], message: str) -> None:
    flags.append(message)
    _warn_once(message)


def _sorted(t: Sequence[float]) -> Triple:
    if len(t) != 3:
        raise DomainError(f"expected a triple, got {len(t)} values")
    return Triple(*t).ordered()


def _sum(values) -> float:
    return math.fsum(values)


def _values(f: FunctionSpec, xs: Sequence[float]) -> List[float]:
    return [f(x) for x in xs]


# ---------------------------------------------------------------------------
# Classic Popoviciu and its quadratic refinements
# ---------------------------------------------------------------------------

def _popoviciu_sides(f: FunctionSpec, t: Triple) -> Tuple[float, float]:
    lhs = _sum(_values(f, t)) / 3.0 + f(t.centroid())
    rhs = 2.0 / 3.0 * _sum(_values(f, t.midpoints()))
    return lhs, rhs


def popoviciu_residual(f: FunctionSpec, t: Sequence[float], tol: float = DEFAULT_TOL) -> ResidualReport:
    """
    Popoviciu's inequality for convex f:

        [f(x) + f(y) + f(z)]/3 + f((x+y+z)/3) >= (2/3)[f((x+y)/2) + f((y+z)/2) + f((z+x)/2)]

    Raises:
        DomainError: if a point lies outside f's domain.
    """
    s = _sorted(t)
    lhs, rhs = _popoviciu_sides(f, s)
    return make_report("popoviciu", t, lhs, rhs, details={"spread": s.spread()}, tol=tol)


def semiconvex_sandwich(f: FunctionSpec, t: Sequence[float], bounds: CurvatureBounds) -> Tuple[float, float]:
    """
    Two-sided bound m S/36 <= D <= M S/36 for f with m <= f'' <= M.

    D is the Popoviciu residual and S = (x-y)^2 + (y-z)^2 + (z-x)^2.

    Returns:
        (upper_gap, lower_gap) = (M S/36 - D, D - m S/36), both expected >= 0.
    """
    report = semiconvex_report(f, t, bounds)
    return report.details["upper_gap"], report.details["lower_gap"]


def semiconvex_report(f: FunctionSpec, t: Sequence[float], bounds: CurvatureBounds,
                      tol: float = DEFAULT_TOL) -> ResidualReport:
    """The sandwich as a report; the residual is the smaller of the two gaps."""
    s = _sorted(t)
    if not all(v in bounds.interval for v in s):
        raise DomainError(f"{tuple(t)} is not inside the curvature interval {bounds.interval}")
    lhs, rhs = _popoviciu_sides(f, s)
    d = lhs - rhs
    spread = s.spread()
    upper_bound, lower_bound = bounds.M * spread / 36.0, bounds.m * spread / 36.0
    details = {
        "popoviciu": d,
        "spread": spread,
        "m": bounds.m,
        "M": bounds.M,
        "upper_gap": upper_bound - d,
        "lower_gap": d - lower_bound,
    }
    if details["upper_gap"] <= details["lower_gap"]:
        return make_report("semiconvex", t, upper_bound, d, details=details, tol=tol)
    return make_report("semiconvex", t, d, lower_bound, details=details, tol=tol)


def strong_convexity_residual(f: FunctionSpec, C: float, t: Sequence[float],
                              tol: float = DEFAULT_TOL) -> ResidualReport:
    """D >= C S/36 for f such that f - (C/2) x^2 is convex."""
    if not C > 0:
        raise DomainError(f"strong convexity modulus must be positive, got {C!r}")
    s = _sorted(t)
    lhs, rhs = _popoviciu_sides(f, s)
    spread = s.spread()
    return make_report("strong", t, lhs - rhs, C * spread / 36.0, details={"spread": spread, "C": C}, tol=tol)


def agm_log_corollary(a: float, b: float, c: float, tol: float = DEFAULT_TOL) -> ResidualReport:
    """
    For a, b, c >= 1:

        (a+b+c)/3 + (abc)^(1/3) - (2/3)(sqrt(ab) + sqrt(bc) + sqrt(ca))
            >= (1/36)(ln^2(a/b) + ln^2(b/c) + ln^2(c/a))
    """
    x, y, z = _sorted((a, b, c))
    if x < 1:
        raise DomainError(f"agm-log corollary needs arguments >= 1, got {(a, b, c)}")
    logs = (math.log(x), math.log(y), math.log(z))
    lhs = (x + y + z) / 3.0 + math.exp(_sum(logs) / 3.0) - 2.0 / 3.0 * _sum(
        (math.sqrt(x * y), math.sqrt(y * z), math.sqrt(z * x))
    )
    rhs = _sum(((logs[0] - logs[1]) ** 2, (logs[1] - logs[2]) ** 2, (logs[2] - logs[0]) ** 2)) / 36.0
    return make_report("agm-log", (a, b, c), lhs, rhs, tol=tol)


# ---------------------------------------------------------------------------
# Quasi-arithmetic means
# ---------------------------------------------------------------------------

def qa_popoviciu(f: FunctionSpec, phi: Generator, psi: Generator, t: Sequence[float],
                 shape: str = "convex", convexity: Optional[ConvexityReport] = None,
                 tol: float = DEFAULT_TOL) -> ResidualReport:
    """
    Popoviciu's inequality for (M_phi, M_psi)-convex f:

        M_psi(M_psi(f(x), f(y), f(z)), f(M_phi(x, y, z)))
            >= M_psi(f(M_phi(x, y)), f(M_phi(y, z)), f(M_phi(z, x)))

    The mean-space inequality has this direction for increasing and for
    decreasing psi alike. shape="concave" swaps the sides.

    Args:
        convexity: an optional mn_convexity_check report for (f, phi, psi);
            a verdict that does not match ``shape`` is flagged.
    """
    if shape not in ("convex", "concave"):
        raise DomainError(f"shape must be 'convex' or 'concave', got {shape!r}")
    flags: List[str] = []
    if convexity is not None and convexity.verdict is not Shape(shape) and not convexity.affine:
        _flag(flags, f"{f.label} is not grid-certified ({phi.name}, {psi.name})-{shape}")
    s = _sorted(t)
    inner = qa_mean(psi, _values(f, s))
    at_mean = f(qa_mean(phi, s))
    nested = qa_mean(psi, (inner, at_mean))
    pairs = ((s.x, s.y), (s.y, s.z), (s.z, s.x))
    pairwise = qa_mean(psi, [f(qa_mean(phi, p)) for p in pairs])
    details = {"inner_mean": inner, "f_at_mean": at_mean}
    if shape == "convex":
        return make_report("qa-pop", t, nested, pairwise, flags, details, tol)
    return make_report("qa-pop", t, pairwise, nested, flags, details, tol)


def hypergeometric_popoviciu(params: HypergeometricParams, t: Sequence[float],
                             tol: float = DEFAULT_TOL) -> ResidualReport:
    """
    The (A, H)-convexity instance for F = 2F1(a, b; c; .), written with 1/F:

        (1/3) sum 1/F(pairwise midpoints) >= (1/2)[(1/3) sum 1/F(x_i) + 1/F(mean)]

    which holds when 1/F is concave, i.e. a + b >= c > 2ab and c >= a + b - 1/2.
    """
    s = _sorted(t)
    if not (0 < s.x and s.z < 1):
        raise DomainError(f"hypergeometric Popoviciu needs points in (0, 1), got {tuple(t)}")
    flags: List[str] = []
    if not params.concave_reciprocal_conditions():
        _flag(flags, f"2F1{(params.a, params.b, params.c)} fails a+b >= c > 2ab, c >= a+b-1/2; 1/F may not be concave")

    def recip(x: float) -> float:
        return 1.0 / hyp2f1(params, x)

    lhs = _sum(recip(m) for m in s.midpoints()) / 3.0
    rhs = 0.5 * (_sum(recip(x) for x in s) / 3.0 + recip(s.centroid()))
    return make_report("hyp-pop", t, lhs, rhs, flags, tol=tol)


def volume_popoviciu(alpha: float, t: Sequence[float], tol: float = DEFAULT_TOL) -> ResidualReport:
    """
    The (H, G)-concavity instance for the l^p unit-ball volume V = V_alpha:

        (V(h(p,q)) V(h(q,r)) V(h(r,p)))^(1/3) >= sqrt((V(p) V(q) V(r))^(1/3) V(h(p,q,r)))

    with h the harmonic mean. Both sides are formed in log space.
    """
    s = _sorted(t)
    if not s.x > 0:
        raise DomainError(f"volume Popoviciu needs positive exponents, got {tuple(t)}")
    harmonic = Generator.power(-1.0)

    def log_v(p: float) -> float:
        return ln_lp_ball_volume(alpha, p)

    pairs = ((s.x, s.y), (s.y, s.z), (s.z, s.x))
    log_lhs = _sum(log_v(qa_mean(harmonic, p)) for p in pairs) / 3.0
    log_rhs = 0.5 * (_sum(log_v(p) for p in s) / 3.0 + log_v(qa_mean(harmonic, s)))
    details = {"log_lhs": log_lhs, "log_rhs": log_rhs}
    return make_report("vol-pop", t, math.exp(log_lhs), math.exp(log_rhs), details=details, tol=tol)


def al_popoviciu_gap(f: FunctionSpec, t: Sequence[float], tol: float = DEFAULT_TOL) -> ResidualReport:
    """
    The (A, L)-Popoviciu functional

        E = L(L(f(x), f(y), f(z)), f((x+y+z)/3)) - L(f((x+y)/2), f((y+z)/2), f((z+x)/2))

    with L the two- and three-point logarithmic means. No sign is implied: for
    log-convex f this is the quantity a Popoviciu inequality would bound.

    Raises:
        DomainError: if f is not positive at an evaluation point.
    """
    s = _sorted(t)
    outer = _values(f, s)
    at_mean = f(s.centroid())
    mids = _values(f, s.midpoints())
    if min(outer + mids + [at_mean]) <= 0:
        raise DomainError(f"{f.label} must be positive at every evaluation point of {tuple(t)}")
    three_point = log_mean3(*outer)
    lhs = log_mean2(three_point, at_mean)
    rhs = log_mean3(*mids)
    details = {"log_mean_points": three_point, "f_at_mean": at_mean}
    return make_report("al-gap", t, lhs, rhs, details=details, tol=tol)


# ---------------------------------------------------------------------------
# h-convexity
# ---------------------------------------------------------------------------

class RatioMode(Enum):
    CONVEX_I = "convex_i"
    CONCAVE_II = "concave_ii"


class JensenMode(Enum):
    CONVEX_SUPER = "convex_super"
    CONCAVE_SUB = "concave_sub"


def _check_h(flags: List[str], h: HSpec, prop: HProperty) -> None:
    check = h_property_check(h, prop)
    if not check.holds:
        _flag(flags, f"h = {h.name} is not {prop.value} (slack {check.value:.3g} at {check.witness})")


def _hpop_coefficients(h: HSpec) -> Tuple[float, float]:
    return max(h(0.5), 2.0 * h(0.25)), 2.0 * h(0.75)


def _pair_pop(inequality_id: str, f: FunctionSpec, g: FunctionSpec, h: HSpec, t: Sequence[float],
              tol: float) -> ResidualReport:
    s = _sorted(t)
    flags: List[str] = []
    _check_h(flags, h, HProperty.CONCAVE)
    outer = _values(g, s)
    at_mean = g(s.centroid())
    mids = _values(f, s.midpoints())
    if min(outer + [at_mean]) < 0 or min(mids) < 0:
        _flag(flags, f"{inequality_id}: functions take negative values at {tuple(t)}")
    weight_outer, weight_mean = _hpop_coefficients(h)
    lhs = weight_outer * _sum(outer) + weight_mean * at_mean
    rhs = _sum(mids)
    details = {"outer_coefficient": weight_outer, "mean_coefficient": weight_mean}
    return make_report(inequality_id, t, lhs, rhs, flags, details, tol)


def hpop_residual(f: FunctionSpec, h: HSpec, t: Sequence[float], tol: float = DEFAULT_TOL) -> ResidualReport:
    """
    Popoviciu's inequality for nonnegative h-convex f with concave h:

        max{h(1/2), 2h(1/4)} (f(x) + f(y) + f(z)) + 2h(3/4) f((x+y+z)/3)
            >= f((x+y)/2) + f((y+z)/2) + f((z+x)/2)
    """
    return _pair_pop("hpop", f, f, h, t, tol)


def h_ratio_popoviciu(f: FunctionSpec, h: HSpec, t: Sequence[float], mode: RatioMode = RatioMode.CONVEX_I,
                      tol: float = DEFAULT_TOL) -> ResidualReport:
    """
    Bounds with the coefficient k = (1 - h(1/3)) / (2 h(1/2)):

        convex_i:   f(x) + f(y) + f(z) - f(mean) >= k * sum f(pairwise midpoints)
        concave_ii: f(mean) - (f(x) + f(y) + f(z)) >= -k * sum f(pairwise midpoints)

    convex_i is meant for supermultiplicative h with h(1/3) < 1 and h-convex f,
    concave_ii for submultiplicative h with h(1/3) > 1 and h-concave f.

    Raises:
        DomainError: when h(1/3) = 1, which makes the coefficient vanish.
    """
    mode = RatioMode(mode)
    third = h(1.0 / 3.0)
    if math.isclose(third, 1.0, rel_tol=0.0, abs_tol=1e-12):
        raise DomainError(f"h = {h.name} has h(1/3) = 1; the ratio coefficient degenerates")
    flags: List[str] = []
    if mode is RatioMode.CONVEX_I:
        _check_h(flags, h, HProperty.SUPERMULTIPLICATIVE)
        if third > 1:
            _flag(flags, f"h = {h.name} has h(1/3) = {third:.6g} > 1")
        coefficient = (1.0 - third) / (2.0 * h(0.5))
    else:
        _check_h(flags, h, HProperty.SUBMULTIPLICATIVE)
        if third < 1:
            _flag(flags, f"h = {h.name} has h(1/3) = {third:.6g} < 1")
        coefficient = (third - 1.0) / (2.0 * h(0.5))
    s = _sorted(t)
    total = _sum(_values(f, s))
    at_mean = f(s.centroid())
    mids = _sum(_values(f, s.midpoints()))
    if mode is RatioMode.CONVEX_I:
        lhs = total - at_mean
    else:
        lhs = at_mean - total
    inequality_id = "h-ratio-i" if mode is RatioMode.CONVEX_I else "h-ratio-ii"
    return make_report(inequality_id, t, lhs, coefficient * mids, flags, {"coefficient": coefficient}, tol)


def h_jensen(f: FunctionSpec, h: HSpec, pts, mode: JensenMode = JensenMode.CONVEX_SUPER,
             tol: float = DEFAULT_TOL) -> ResidualReport:
    """
    Jensen's inequality for h-convex f and supermultiplicative h,

        f((x_1 + ... + x_n)/n) <= h(1/n)(f(x_1) + ... + f(x_n)),

    reversed (concave_sub) for h-concave f and submultiplicative h.
    """
    mode = JensenMode(mode)
    pts = pts if isinstance(pts, PointSet) else PointSet.of(pts)
    if pts.weights is not None:
        raise DomainError("h-Jensen takes uniformly weighted points")
    n = len(pts)
    if n < 2:
        raise DomainError(f"h-Jensen needs at least 2 points, got {n}")
    values = sorted(pts.values)
    flags: List[str] = []
    prop = HProperty.SUPERMULTIPLICATIVE if mode is JensenMode.CONVEX_SUPER else HProperty.SUBMULTIPLICATIVE
    _check_h(flags, h, prop)
    weighted = h(1.0 / n) * _sum(_values(f, values))
    at_mean = f(_sum(values) / n)
    if mode is JensenMode.CONVEX_SUPER:
        return make_report("h-jensen", pts.values, weighted, at_mean, flags, tol=tol)
    return make_report("h-jensen", pts.values, at_mean, weighted, flags, tol=tol)


def h_jensen_pair_pop(f: FunctionSpec, g: FunctionSpec, h: HSpec, t: Sequence[float],
                      tol: float = DEFAULT_TOL) -> ResidualReport:
    """
    Popoviciu's inequality for an h-Jensen pair (f, g) of positive functions:

        max{h(1/2), 2h(1/4)} (g(x) + g(y) + g(z)) + 2h(3/4) g((x+y+z)/3)
            >= f((x+y)/2) + f((y+z)/2) + f((z+x)/2)
    """
    return _pair_pop("h-pair-pop", f, g, h, t, tol)


def h_jensen_pair_defect(f: FunctionSpec, g: FunctionSpec, h: HSpec, grid_n: int = 41,
                         interval: Optional[Interval] = None) -> Defect:
    """
    min over a grid of h(1 - l) g(x) + h(l) g(y) - f((1 - l) x + l y).

    (f, g) is a grid-certified h-Jensen pair iff the defect holds.
    """
    return h_pair_defect(f, g, h, grid_n, interval)


# ---------------------------------------------------------------------------
# Registry by id
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class EvaluatorParams:
    """
    Everything an evaluator may need besides the point.

    Attributes:
        f, g: function under study and, for h-Jensen pairs, its majorant.
        phi, psi: generators for qa-pop.
        h: weight function for the h-convexity inequalities.
        C: strong convexity modulus.
        alpha: dimension for vol-pop when f is not an lp_volume spec.
        shape: "convex" or "concave" for qa-pop.
        jensen_mode: direction for h-jensen.
        bounds: curvature bounds for semiconvex; estimated on demand.
        tolerance: verdict tolerance before scaling.
    """
    f: Optional[FunctionSpec] = None
    g: Optional[FunctionSpec] = None
    phi: Generator = field(default_factory=Generator.identity)
    psi: Generator = field(default_factory=Generator.identity)
    h: Optional[HSpec] = None
    C: float = 1.0
    alpha: float = 2.0
    shape: str = "convex"
    jensen_mode: JensenMode = JensenMode.CONVEX_SUPER
    bounds: Optional[CurvatureBounds] = None
    tolerance: float = DEFAULT_TOL

    def need_f(self, inequality_id: str) -> FunctionSpec:
        if self.f is None:
            raise DomainError(f"{inequality_id} needs a function (--fn)")
        return self.f

    def need_h(self, inequality_id: str) -> HSpec:
        if self.h is None:
            raise DomainError(f"{inequality_id} needs a weight function h (--h)")
        return self.h

    def hypergeometric(self) -> HypergeometricParams:
        return self.need_f("hyp-pop").hypergeometric_params

    def volume_alpha(self) -> float:
        if self.f is not None and self.f.name == "lp_volume":
            return self.f.params[0]
        return self.alpha

    def with_bounds(self) -> "EvaluatorParams":
        """Fills in curvature bounds over f's grid interval when missing."""
        if self.bounds is not None:
            return self
        f = self.need_f("semiconvex")
        return replace(self, bounds=estimate_curvature(f, f.grid_interval))


def estimate_curvature(f: FunctionSpec, interval: Interval) -> CurvatureBounds:
    """
    curvature_bounds on a 201-node grid over ``interval``.

    When a difference stencil at an end would leave f's domain, the two end
    nodes are dropped; the bounds are then reported for the whole interval.
    """
    step = AUTO_STEP * max(1.0, abs(interval.lo), abs(interval.hi))
    if interval.lo - step in f.domain and interval.hi + step in f.domain:
        return curvature_bounds(f, interval, CURVATURE_GRID)
    spacing = interval.width / (CURVATURE_GRID - 1)
    inner = Interval.closed(interval.lo + spacing, interval.hi - spacing)
    estimate = curvature_bounds(f, inner, CURVATURE_GRID - 2)
    return CurvatureBounds(estimate.m, estimate.M, interval, CURVATURE_GRID - 2)


Evaluator = Callable[[EvaluatorParams, Sequence[float]], ResidualReport]

_EVALUATORS: Dict[str, Evaluator] = {
    "popoviciu": lambda p, t: popoviciu_residual(p.need_f("popoviciu"), t, p.tolerance),
    "semiconvex": lambda p, t: semiconvex_report(p.need_f("semiconvex"), t, p.with_bounds().bounds, p.tolerance),
    "strong": lambda p, t: strong_convexity_residual(p.need_f("strong"), p.C, t, p.tolerance),
    "agm-log": lambda p, t: agm_log_corollary(*_sorted(t), tol=p.tolerance),
    "qa-pop": lambda p, t: qa_popoviciu(p.need_f("qa-pop"), p.phi, p.psi, t, p.shape, tol=p.tolerance),
    "hyp-pop": lambda p, t: hypergeometric_popoviciu(p.hypergeometric(), t, p.tolerance),
    "vol-pop": lambda p, t: volume_popoviciu(p.volume_alpha(), t, p.tolerance),
    "al-gap": lambda p, t: al_popoviciu_gap(p.need_f("al-gap"), t, p.tolerance),
    "hpop": lambda p, t: hpop_residual(p.need_f("hpop"), p.need_h("hpop"), t, p.tolerance),
    "h-ratio-i": lambda p, t: h_ratio_popoviciu(p.need_f("h-ratio-i"), p.need_h("h-ratio-i"), t,
                                                RatioMode.CONVEX_I, p.tolerance),
    "h-ratio-ii": lambda p, t: h_ratio_popoviciu(p.need_f("h-ratio-ii"), p.need_h("h-ratio-ii"), t,
                                                 RatioMode.CONCAVE_II, p.tolerance),
    "h-jensen": lambda p, t: h_jensen(p.need_f("h-jensen"), p.need_h("h-jensen"), t, p.jensen_mode, p.tolerance),
    "h-pair-pop": lambda p, t: h_jensen_pair_pop(p.need_f("h-pair-pop"), p.g if p.g is not None else p.f,
                                                 p.need_h("h-pair-pop"), t, p.tolerance),
}

INEQUALITY_IDS = tuple(_EVALUATORS)


def _lookup(inequality_id: str) -> Evaluator:
    try:
        return _EVALUATORS[inequality_id]
    except KeyError:
        raise RegistryError(f"unknown inequality {inequality_id!r}; known: {', '.join(INEQUALITY_IDS)}") from None


def evaluate(inequality_id: str, params: EvaluatorParams, point: Sequence[float]) -> ResidualReport:
    """Dispatches to the evaluator registered under ``inequality_id``."""
    return _lookup(inequality_id)(params, point)


def build_objective(inequality_id: str, params: EvaluatorParams) -> Callable[[Sequence[float]], ResidualReport]:
    """
    A point -> report closure with everything point-independent resolved once
    (curvature bounds in particular).
    """
    evaluator = _lookup(inequality_id)
    if inequality_id == "semiconvex":
        params = params.with_bounds()
    return lambda point: evaluator(params, point)


def default_window(inequality_id: str, params: EvaluatorParams) -> Interval:
    """Per-coordinate sampling window used when no region is given."""
    _lookup(inequality_id)
    if inequality_id == "agm-log":
        return Interval.closed(1.0, 50.0)
    if inequality_id == "vol-pop" and (params.f is None or params.f.name != "lp_volume"):
        return Interval.closed(1.0, 10.0)
    if inequality_id == "semiconvex":
        return params.with_bounds().bounds.interval
    window = params.need_f(inequality_id).window
    if params.g is not None and not params.g.domain.contains_interval(window):
        raise DomainError(f"default window {window} of {params.f.label} is outside the domain of {params.g.label}")
    return window
