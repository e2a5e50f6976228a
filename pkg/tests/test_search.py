"""
Pytest tests for grid scans, Nelder-Mead refinement, counterexample
certification and seeded sweeps.
"""

import pytest

from src.convexity import HSpec
from src.errors import DomainError, SearchError
from src.functions import function
from src.inequalities import EvaluatorParams
from src.interval import Interval
from src.search import (CertificateStatus, SearchConfig, SearchRegion, find_counterexample, grid_scan, refine,
                        sweep)


# --- Helpers ---

def params_for(name, *args, **kwargs):
    return EvaluatorParams(f=function(name, *args), **kwargs)


def quadratic(point):
    return sum((x - 0.5) ** 2 for x in point)


# --- Regions ---

def test_region_validation():
    with pytest.raises(DomainError):
        SearchRegion.cube(0.0, 1.0, resolution=1)
    with pytest.raises(DomainError):
        SearchRegion((Interval.positive(),))
    with pytest.raises(DomainError):
        SearchRegion.from_bounds((0.0, 1.0, 2.0))


def test_region_from_bounds():
    region = SearchRegion.from_bounds((0.0, 1.0, -1.0, 1.0, 2.0, 3.0), resolution=5)
    assert region.dims == 3
    assert region.bounds == [(0.0, 1.0), (-1.0, 1.0), (2.0, 3.0)]
    assert region.clip((-5.0, 0.0, 9.0)) == (0.0, 0.0, 3.0)
    assert region.contains((0.5, 0.0, 2.5))
    assert not region.contains((0.5, 0.0))


# --- Grid scan ---

def test_grid_scan_square_minimum_on_diagonal():
    """x^2 gives S/18, which vanishes on the diagonal."""
    scan = grid_scan("popoviciu", params_for("power", 2), SearchRegion.cube(-1.0, 1.0, resolution=5))
    assert scan.evaluated == 125
    assert not scan.skipped
    x, y, z = scan.best.point
    assert x == y == z
    assert scan.best.residual == pytest.approx(0.0, abs=1e-12)
    residuals = [c.residual for c in scan.candidates]
    assert residuals == sorted(residuals)


def test_grid_scan_records_failures():
    """hyp2f1 at x = 0 ... 1: the closed end 1 lies outside the open unit interval."""
    params = EvaluatorParams(f=function("hyp2f1", 0.5, 0.5, 0.75))
    scan = grid_scan("hyp-pop", params, SearchRegion.cube(0.0, 1.0, resolution=3))
    assert scan.skipped
    assert scan.evaluated + len(scan.skipped) == 27


def test_grid_scan_with_nothing_evaluable():
    scan = grid_scan("agm-log", EvaluatorParams(), SearchRegion.cube(0.1, 0.5, resolution=2))
    with pytest.raises(SearchError):
        scan.best


# --- Refinement ---

def test_refine_quadratic():
    region = SearchRegion.cube(0.0, 1.0)
    result = refine((0.1, 0.9, 0.3), quadratic, region, tol=1e-12)
    assert not result.failed
    assert result.point == pytest.approx((0.5, 0.5, 0.5), abs=1e-6)
    assert result.residual <= result.start_residual


def test_refine_stays_in_region():
    """The unconstrained minimum (0.5, 0.5, 0.5) is outside [0.7, 1]^3; the corner is best."""
    region = SearchRegion.cube(0.7, 1.0)
    result = refine((0.9, 0.95, 0.8), quadratic, region)
    assert region.contains(result.point)
    assert result.point == pytest.approx((0.7, 0.7, 0.7), abs=1e-4)


def test_refine_start_outside_region():
    with pytest.raises(DomainError):
        refine((2.0, 0.0, 0.0), quadratic, SearchRegion.cube(0.0, 1.0))


def test_refine_failing_objective():
    def broken(point):
        raise DomainError("undefined")

    result = refine((0.5, 0.5, 0.5), broken, SearchRegion.cube(0.0, 1.0), max_iter=20)
    assert result.failed
    assert result.point == (0.5, 0.5, 0.5)


def test_search_config_validation():
    with pytest.raises(DomainError):
        SearchConfig(k=0)
    with pytest.raises(DomainError):
        SearchConfig(random_restarts=-1)


# --- Counterexample search ---

def test_no_violation_for_convex_exp():
    certificate = find_counterexample("popoviciu", params_for("exp"), SearchRegion.cube(0.0, 2.0, resolution=9))
    assert certificate.status is CertificateStatus.NO_VIOLATION_FOUND
    assert not certificate.violation
    assert certificate.nodes_evaluated == 729
    assert certificate.residual >= -certificate.tolerance


def test_cube_violation_is_certified():
    """x^3 is not convex on [-1, 1]; the certificate is a fresh re-evaluation."""
    certificate = find_counterexample("popoviciu", params_for("power", 3), SearchRegion.cube(-1.0, 1.0, resolution=9))
    assert certificate.violation
    assert certificate.residual < -certificate.tolerance
    assert certificate.residual <= certificate.scanned_minimum
    assert certificate.report.residual == certificate.residual
    assert certificate.residual == pytest.approx(certificate.lhs - certificate.rhs)


@pytest.mark.parametrize("lo, hi", [(1.35, 1.5), (0.25, 0.4)])
def test_al_gap_search_finds_no_violation(lo, hi):
    certificate = find_counterexample("al-gap", params_for("gamma"), SearchRegion.cube(lo, hi, resolution=7),
                                      SearchConfig(k=3, max_iter=400))
    assert certificate.status is CertificateStatus.NO_VIOLATION_FOUND


def test_hpop_sqrt_no_violation():
    params = EvaluatorParams(f=function("power", 0.5).restricted(0.0, 4.0), h=HSpec.power(0.5))
    certificate = find_counterexample("hpop", params, SearchRegion.cube(0.0, 4.0, resolution=7),
                                      SearchConfig(k=2, max_iter=300))
    assert not certificate.violation


def test_search_region_must_fit_domain():
    with pytest.raises(DomainError):
        find_counterexample("popoviciu", params_for("log"), SearchRegion.cube(-1.0, 1.0, resolution=3))


def test_search_is_deterministic():
    region = SearchRegion.cube(-1.0, 1.0, resolution=5, seed=3)
    config = SearchConfig(k=2, max_iter=200, random_restarts=2)
    first = find_counterexample("popoviciu", params_for("power", 3), region, config)
    second = find_counterexample("popoviciu", params_for("power", 3), region, config)
    assert first == second
    assert first.refinements == 4


# --- Sweeps ---

def test_sweep_counts_and_verdict():
    summary = sweep("popoviciu", params_for("exp"), 500, 42)
    assert summary.samples == 500
    assert summary.evaluated == 500
    assert summary.violations == 0
    assert summary.holds
    assert summary.window == Interval.closed(-2.0, 2.0)
    assert summary.min_residual == summary.worst.residual


def test_sweep_is_deterministic():
    a = sweep("agm-log", EvaluatorParams(), 200, 7)
    b = sweep("agm-log", EvaluatorParams(), 200, 7)
    assert a.min_residual == b.min_residual and a.mean_residual == b.mean_residual
    assert a.worst.point == b.worst.point
    assert sweep("agm-log", EvaluatorParams(), 200, 8).worst.point != a.worst.point


def test_sweep_finds_cube_violations():
    summary = sweep("popoviciu", params_for("power", 3), 300, 1)
    assert summary.violations > 0
    assert not summary.holds


def test_sweep_h_jensen_dimensions():
    params = EvaluatorParams(f=function("power", 0.5).restricted(0.0, 4.0), h=HSpec.power(0.5))
    summary = sweep("h-jensen", params, 200, 2, dims=5)
    assert summary.holds
    assert len(summary.worst.point) == 5


def test_sweep_skips_undefined_points():
    summary = sweep("agm-log", EvaluatorParams(), 100, 0, window=Interval.closed(0.5, 2.0))
    assert summary.skipped > 0
    assert summary.evaluated + summary.skipped == 100


def test_sweep_argument_checks():
    with pytest.raises(DomainError):
        sweep("popoviciu", params_for("exp"), 0, 1)
    with pytest.raises(DomainError):
        sweep("popoviciu", params_for("exp"), 10, 1, window=Interval.positive())
