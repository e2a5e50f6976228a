"""
Pytest tests for the inequality evaluators and the registry by id.

Worked examples pin the two sides; seeded samples check that inequalities
with satisfied hypotheses hold everywhere they are tried.
"""

import itertools
import math

import numpy as np
import pytest

from src.convexity import HSpec, mn_convexity_check
from src.errors import DomainError, RegistryError
from src.functions import function
from src.interval import Interval
from src.means import Generator
from src.inequalities import (INEQUALITY_IDS, EvaluatorParams, JensenMode, RatioMode, Verdict, agm_log_corollary,
                              al_popoviciu_gap, build_objective, default_window, evaluate, h_jensen,
                              h_jensen_pair_defect, h_jensen_pair_pop, h_ratio_popoviciu, hpop_residual,
                              hypergeometric_popoviciu, make_report, popoviciu_residual, qa_popoviciu,
                              semiconvex_report, semiconvex_sandwich, strong_convexity_residual, volume_popoviciu)
from src.specfun import HypergeometricParams, curvature_bounds


# --- Helpers ---

def triples(seed, n, lo, hi):
    """Seeded uniform triples in [lo, hi]^3."""
    return np.random.default_rng(seed).uniform(lo, hi, size=(n, 3))


def assert_holds_on(evaluator, seed, n, lo, hi):
    for row in triples(seed, n, lo, hi):
        report = evaluator(tuple(row))
        assert report.holds, (tuple(row), report.residual)


def popoviciu_d(f, t):
    return popoviciu_residual(f, t).residual


def spread(t):
    x, y, z = t
    return (x - y) ** 2 + (y - z) ** 2 + (z - x) ** 2


# Per id: parameters, a point in the default domain, and a diagonal value c.
CASES = {
    "popoviciu": (EvaluatorParams(f=function("exp")), (0.3, -1.2, 1.7), 0.7),
    "semiconvex": (EvaluatorParams(f=function("exp")), (0.3, -1.2, 1.7), 0.7),
    "strong": (EvaluatorParams(f=function("power", 2)), (0.3, -1.2, 1.7), 0.7),
    "agm-log": (EvaluatorParams(), (1.5, 7.0, 3.2), 2.5),
    "qa-pop": (EvaluatorParams(f=function("gamma").restricted(1.1, 2.0), psi=Generator.log()), (1.2, 1.9, 1.5), 1.6),
    "hyp-pop": (EvaluatorParams(f=function("hyp2f1", 0.5, 0.5, 0.75)), (0.1, 0.8, 0.4), 0.3),
    "vol-pop": (EvaluatorParams(f=function("lp_volume", 2)), (1.0, 3.0, 2.5), 2.0),
    "al-gap": (EvaluatorParams(f=function("gamma")), (1.40, 1.47, 1.46), 1.45),
    "hpop": (EvaluatorParams(f=function("exp"), h=HSpec.identity()), (0.3, -1.2, 1.7), 0.7),
    "h-ratio-i": (EvaluatorParams(f=function("exp"), h=HSpec.identity()), (0.3, -1.2, 1.7), 0.7),
    "h-ratio-ii": (EvaluatorParams(f=function("exp"), h=HSpec.reciprocal()), (0.3, -1.2, 1.7), 0.7),
    "h-jensen": (EvaluatorParams(f=function("exp"), h=HSpec.identity()), (0.3, -1.2, 1.7), 0.7),
    "h-pair-pop": (EvaluatorParams(f=function("exp"), h=HSpec.identity()), (0.3, -1.2, 1.7), 0.7),
}


# --- Reports ---

def test_make_report_scales_tolerance():
    report = make_report("popoviciu", (0, 1, 2), 1000.0, 1000.0 + 5e-7)
    assert report.tolerance == pytest.approx(1e-9 * (1000.0 + 5e-7))
    assert report.verdict is Verdict.HOLDS
    assert not make_report("popoviciu", (0, 1, 2), 1.0, 1.1).holds


def test_nan_residual_is_a_violation():
    assert make_report("popoviciu", (0, 1, 2), math.nan, 1.0).verdict is Verdict.VIOLATED


# --- Classic Popoviciu ---

def test_popoviciu_exp_example():
    report = popoviciu_residual(function("exp"), (0.0, 1.0, 2.0))
    assert report.residual == pytest.approx(0.52160, abs=1e-5)
    assert report.holds


def test_popoviciu_square_is_spread_over_eighteen():
    """For x^2 the residual is exactly S/18."""
    report = popoviciu_residual(function("power", 2), (0.0, 0.0, 3.0))
    assert report.lhs == pytest.approx(4.0)
    assert report.rhs == pytest.approx(3.0)
    assert report.residual == pytest.approx(1.0, abs=1e-12)


@pytest.mark.parametrize("ineq", INEQUALITY_IDS)
def test_residual_is_symmetric_bit_for_bit(ineq):
    params, point, _ = CASES[ineq]
    residuals = {evaluate(ineq, params, p).residual for p in itertools.permutations(point)}
    assert len(residuals) == 1


@pytest.mark.parametrize("ineq", INEQUALITY_IDS)
def test_residual_on_diagonal(ineq):
    """(c, c, c) gives 0, except h-ratio-ii: -(2 + 3k) f(c) with k = 1/2 for h = 1/l."""
    params, _, c = CASES[ineq]
    expected = -3.5 * math.exp(c) if ineq == "h-ratio-ii" else 0.0
    assert evaluate(ineq, params, (c, c, c)).residual == pytest.approx(expected, abs=1e-12)


@pytest.mark.slow
@pytest.mark.parametrize("name, args, lo, hi", [
    ("power", (2,), -1.0, 1.0),
    ("power", (4,), -1.0, 1.0),
    ("exp", (), -2.0, 2.0),
    ("abs", (), -1.0, 1.0),
    ("neglog", (), 0.1, 5.0),
    ("gamma", (), 0.5, 4.0),
])
def test_popoviciu_holds_for_convex_functions(name, args, lo, hi):
    f = function(name, *args)
    for row in triples(1, 100_000, lo, hi):
        assert popoviciu_d(f, tuple(row)) >= -1e-10, tuple(row)


def test_popoviciu_of_square_is_spread_over_eighteen_on_samples():
    f = function("power", 2)
    for row in triples(12, 10_000, -5.0, 5.0):
        t = tuple(row)
        assert abs(popoviciu_d(f, t) - spread(t) / 18.0) <= 1e-10, t


def test_popoviciu_fails_for_the_cube():
    assert not popoviciu_residual(function("power", 3), (-1.0, -1.0, 0.0)).holds


def test_popoviciu_domain_error():
    with pytest.raises(DomainError):
        popoviciu_residual(function("log"), (-1.0, 1.0, 2.0))
    with pytest.raises(DomainError):
        popoviciu_residual(function("exp"), (1.0, 2.0))


# --- Quadratic refinements ---

def test_semiconvex_sandwich_exp():
    """exp on [0, 2]: D = 0.5216, S = 6, gaps to S/36 and e^2 S/36."""
    bounds = curvature_bounds(function("exp"), Interval.closed(0.0, 2.0), 201)
    upper_gap, lower_gap = semiconvex_sandwich(function("exp"), (0.0, 1.0, 2.0), bounds)
    assert lower_gap == pytest.approx(0.52160 - 1.0 / 6.0, abs=1e-4)
    assert upper_gap == pytest.approx(math.e ** 2 / 6.0 - 0.52160, abs=1e-4)
    report = semiconvex_report(function("exp"), (0.0, 1.0, 2.0), bounds)
    assert report.residual == pytest.approx(min(upper_gap, lower_gap))
    assert report.details["spread"] == 6.0


def test_semiconvex_outside_bounds_interval():
    bounds = curvature_bounds(function("exp"), Interval.closed(0.0, 2.0), 51)
    with pytest.raises(DomainError):
        semiconvex_report(function("exp"), (0.0, 1.0, 3.0), bounds)


@pytest.mark.slow
@pytest.mark.parametrize("f", [function("exp"), function("power", 3), function("power", 4), function("sin")],
                         ids=str)
def test_semiconvex_holds_with_estimated_bounds(f):
    params = EvaluatorParams(f=f)
    window = default_window("semiconvex", params)
    assert_holds_on(build_objective("semiconvex", params), 2, 10_000, window.lo, window.hi)


def test_strong_convexity_example():
    report = strong_convexity_residual(function("power", 2), 1.0, (0.0, 0.0, 3.0))
    assert report.lhs == pytest.approx(1.0)
    assert report.rhs == pytest.approx(0.5)
    assert report.residual == pytest.approx(0.5)


def test_strong_convexity_tight_for_square():
    """x^2 is 2-strongly convex with equality."""
    report = strong_convexity_residual(function("power", 2), 2.0, (-0.4, 0.1, 0.9))
    assert abs(report.residual) <= 1e-12
    assert report.holds


def test_strong_convexity_needs_positive_modulus():
    with pytest.raises(DomainError):
        strong_convexity_residual(function("power", 2), 0.0, (0.0, 1.0, 2.0))


def test_agm_log_example():
    """At (1, e, e^2) the left side is the exp Popoviciu residual and the right is 1/6."""
    report = agm_log_corollary(1.0, math.e, math.e ** 2)
    assert report.lhs == pytest.approx(0.52160, abs=1e-5)
    assert report.rhs == pytest.approx(1.0 / 6.0, rel=1e-14)


@pytest.mark.slow
def test_agm_log_holds_on_samples():
    assert_holds_on(lambda t: agm_log_corollary(*t), 3, 100_000, 1.0, 50.0)


def test_agm_log_needs_arguments_at_least_one():
    with pytest.raises(DomainError):
        agm_log_corollary(0.5, 2.0, 3.0)


# --- Quasi-arithmetic means ---

def test_qa_popoviciu_with_arithmetic_means_halves_the_classic_residual():
    f = function("exp")
    for row in triples(14, 10_000, -2.0, 2.0):
        t = tuple(row)
        report = qa_popoviciu(f, Generator.identity(), Generator.identity(), t)
        assert report.residual == pytest.approx(popoviciu_d(f, t) / 2.0, abs=1e-12), t


def test_qa_popoviciu_gamma_log_convex():
    f = function("gamma").restricted(1.1, 2.0)
    assert_holds_on(lambda t: qa_popoviciu(f, Generator.identity(), Generator.log(), t), 4, 10_000, 1.1, 2.0)


@pytest.mark.slow
def test_qa_popoviciu_hypergeometric_arithmetic_harmonic():
    f = function("hyp2f1", 0.5, 0.5, 0.75)
    assert_holds_on(lambda t: qa_popoviciu(f, Generator.identity(), Generator.power(-1), t), 5, 10_000, 0.05, 0.95)


def test_qa_popoviciu_concave_shape_swaps_sides():
    f = function("lp_volume", 2)
    convex = qa_popoviciu(f, Generator.power(-1), Generator.log(), (1.0, 2.0, 3.0))
    concave = qa_popoviciu(f, Generator.power(-1), Generator.log(), (1.0, 2.0, 3.0), shape="concave")
    assert concave.lhs == convex.rhs and concave.rhs == convex.lhs
    assert concave.holds
    assert_holds_on(lambda t: qa_popoviciu(f, Generator.power(-1), Generator.log(), t, "concave"), 6, 1000, 1.0, 10.0)


def test_qa_popoviciu_flags_uncertified_shape():
    f = function("power", 3).restricted(-1.0, 1.0)
    check = mn_convexity_check(f, Generator.identity(), Generator.identity(), 51)
    report = qa_popoviciu(f, Generator.identity(), Generator.identity(), (-1.0, 0.0, 1.0), convexity=check)
    assert report.hypothesis_flags


def test_qa_popoviciu_rejects_unknown_shape():
    with pytest.raises(DomainError):
        qa_popoviciu(function("exp"), Generator.identity(), Generator.identity(), (0, 1, 2), shape="affine")


def test_hypergeometric_popoviciu_holds_and_is_unflagged():
    params = HypergeometricParams(0.5, 0.5, 0.75)
    report = hypergeometric_popoviciu(params, (0.1, 0.5, 0.9))
    assert report.holds
    assert report.hypothesis_flags == ()


@pytest.mark.slow
def test_hypergeometric_popoviciu_holds_on_samples():
    params = HypergeometricParams(0.5, 0.5, 0.75)
    assert_holds_on(lambda t: hypergeometric_popoviciu(params, t), 7, 10_000, 0.05, 0.95)


def test_hypergeometric_popoviciu_flags_parameters():
    report = hypergeometric_popoviciu(HypergeometricParams(1.0, 1.0, 1.0), (0.1, 0.5, 0.9))
    assert report.hypothesis_flags


def test_hypergeometric_popoviciu_unit_interval():
    with pytest.raises(DomainError):
        hypergeometric_popoviciu(HypergeometricParams(0.5, 0.5, 0.75), (0.0, 0.5, 0.9))


def test_volume_popoviciu_example():
    """alpha = 2 at (1, 2, 3): cube-root term 2.8543 over 2.8408."""
    report = volume_popoviciu(2.0, (1.0, 2.0, 3.0))
    assert report.lhs == pytest.approx(2.8543, abs=2e-3)
    assert report.rhs == pytest.approx(2.8408, abs=2e-3)
    assert report.holds
    assert report.details["log_lhs"] == pytest.approx(math.log(report.lhs), rel=1e-14)


@pytest.mark.slow
@pytest.mark.parametrize("alpha", [2.0, 3.0, 7.5])
def test_volume_popoviciu_holds_on_samples(alpha):
    assert_holds_on(lambda t: volume_popoviciu(alpha, t), 8, 10_000, 0.5, 10.0)


def test_al_gap_near_gamma_minimum():
    """Accurate evaluation at (1.40, 1.46, 1.47) gives a small positive gap."""
    report = al_popoviciu_gap(function("gamma"), (1.40, 1.46, 1.47))
    assert report.lhs == pytest.approx(0.88596, abs=1e-5)
    assert report.rhs == pytest.approx(0.88585, abs=1e-5)
    assert report.residual == pytest.approx(1.0584e-4, rel=1e-2)


def test_al_gap_positive_side():
    """At (0.30, 0.34, 0.35) the gap is positive."""
    report = al_popoviciu_gap(function("gamma"), (0.30, 0.34, 0.35))
    assert report.lhs == pytest.approx(2.71137798, abs=1e-7)
    assert report.rhs == pytest.approx(2.70919953, abs=1e-7)
    assert report.holds


def test_al_gap_needs_positive_values():
    with pytest.raises(DomainError):
        al_popoviciu_gap(function("log"), (0.5, 1.0, 2.0))


# --- h-convexity ---

def test_hpop_sqrt_on_diagonal():
    """Coefficients 1 and sqrt 3 give residual sqrt 3 at (1, 1, 1)."""
    report = hpop_residual(function("power", 0.5), HSpec.power(0.5), (1.0, 1.0, 1.0))
    assert report.details["outer_coefficient"] == pytest.approx(1.0)
    assert report.residual == pytest.approx(math.sqrt(3.0), rel=1e-14)


def test_hpop_identity_is_scaled_classic():
    """With h(l) = l the residual is 3/2 of the classic one."""
    f = function("exp")
    for row in triples(9, 10_000, -2.0, 2.0):
        t = tuple(row)
        assert hpop_residual(f, HSpec.identity(), t).residual == pytest.approx(1.5 * popoviciu_d(f, t), abs=1e-12)


@pytest.mark.slow
@pytest.mark.parametrize("s", [0.25, 0.5, 0.75])
def test_hpop_holds_for_breckner_convex_functions(s):
    f = function("power", s).restricted(0.0, 10.0)
    assert_holds_on(lambda t: hpop_residual(f, HSpec.power(s), t), 10, 10_000, 0.0, 10.0)


def test_hpop_flags_nonconcave_h():
    report = hpop_residual(function("exp"), HSpec.reciprocal(), (0.0, 0.5, 1.0))
    assert report.hypothesis_flags


def test_h_ratio_sqrt_example():
    report = h_ratio_popoviciu(function("power", 0.5), HSpec.power(0.5), (1.0, 1.0, 1.0))
    assert report.lhs == pytest.approx(2.0)
    assert report.details["coefficient"] == pytest.approx(0.29886, abs=1e-5)
    assert report.rhs == pytest.approx(0.89658, abs=1e-5)
    assert report.residual == pytest.approx(1.1034245278, abs=1e-9)


def test_h_ratio_holds_for_sqrt():
    f = function("power", 0.5).restricted(0.0, 10.0)
    expected = (1.0 - (1.0 / 3.0) ** 0.5) / (2.0 * 0.5 ** 0.5)
    report = h_ratio_popoviciu(f, HSpec.power(0.5), (1.0, 2.0, 3.0))
    assert report.details["coefficient"] == pytest.approx(expected, abs=1e-12)
    assert_holds_on(lambda t: h_ratio_popoviciu(f, HSpec.power(0.5), t), 11, 10_000, 0.0, 10.0)


def test_h_ratio_second_mode_coefficient():
    """h = 1/l: (h(1/3) - 1) / (2 h(1/2)) = 1/2."""
    report = h_ratio_popoviciu(function("exp"), HSpec.reciprocal(), (0.0, 0.5, 1.0), RatioMode.CONCAVE_II)
    assert report.inequality_id == "h-ratio-ii"
    assert report.details["coefficient"] == pytest.approx(0.5)


def test_h_ratio_degenerate_coefficient():
    with pytest.raises(DomainError):
        h_ratio_popoviciu(function("exp"), HSpec.one(), (0.0, 0.5, 1.0))


def test_h_jensen_sqrt_example():
    report = h_jensen(function("power", 0.5), HSpec.power(0.5), (1.0, 9.0))
    assert report.lhs == pytest.approx(2.0 * math.sqrt(2.0))
    assert report.rhs == pytest.approx(math.sqrt(5.0))
    assert report.residual == pytest.approx(0.5924, abs=1e-4)


def test_h_jensen_identity_is_classic_jensen():
    report = h_jensen(function("exp"), HSpec.identity(), (0.0, 1.0, 2.0, 3.0))
    assert report.lhs == pytest.approx((1 + math.e + math.e ** 2 + math.e ** 3) / 4.0)
    assert report.rhs == pytest.approx(math.exp(1.5))


def test_h_jensen_concave_mode_reverses():
    f = function("power", 0.5)
    convex = h_jensen(f, HSpec.identity(), (1.0, 9.0))
    concave = h_jensen(f, HSpec.identity(), (1.0, 9.0), JensenMode.CONCAVE_SUB)
    assert concave.lhs == convex.rhs
    assert concave.holds


def test_h_jensen_point_checks():
    with pytest.raises(DomainError):
        h_jensen(function("exp"), HSpec.identity(), (1.0,))


def test_h_pair_pop_with_equal_pair_is_hpop():
    f = function("power", 0.5)
    pair = h_jensen_pair_pop(f, f, HSpec.power(0.5), (1.0, 4.0, 9.0))
    single = hpop_residual(f, HSpec.power(0.5), (1.0, 4.0, 9.0))
    assert pair.residual == single.residual
    assert pair.inequality_id == "h-pair-pop"


# --- Registry by id ---

def test_every_id_is_registered():
    assert len(INEQUALITY_IDS) == 13
    assert "popoviciu" in INEQUALITY_IDS and "h-pair-pop" in INEQUALITY_IDS


def test_evaluate_dispatches():
    params = EvaluatorParams(f=function("power", 2))
    assert evaluate("popoviciu", params, (0.0, 0.0, 3.0)).residual == pytest.approx(1.0, abs=1e-12)
    assert evaluate("vol-pop", EvaluatorParams(f=function("lp_volume", 2)), (1.0, 2.0, 3.0)).holds


def test_evaluate_unknown_id_and_missing_inputs():
    with pytest.raises(RegistryError):
        evaluate("jensen", EvaluatorParams(), (0, 1, 2))
    with pytest.raises(DomainError):
        evaluate("popoviciu", EvaluatorParams(), (0, 1, 2))
    with pytest.raises(DomainError):
        evaluate("hpop", EvaluatorParams(f=function("exp")), (0, 1, 2))


def test_default_windows():
    assert default_window("agm-log", EvaluatorParams()) == Interval.closed(1.0, 50.0)
    assert default_window("vol-pop", EvaluatorParams()) == Interval.closed(1.0, 10.0)
    assert default_window("popoviciu", EvaluatorParams(f=function("exp"))) == Interval.closed(-2.0, 2.0)


def test_h_jensen_pair_defect():
    """(sqrt, 2 sqrt) is a power:0.5 pair on [0, 4]; (sqrt, sqrt/2) is not."""
    f = function("power", 0.5).restricted(0.0, 4.0)
    h = HSpec.power(0.5)
    assert h_jensen_pair_defect(f, function("power", 0.5).affine(2.0), h, 21).holds
    assert not h_jensen_pair_defect(f, function("power", 0.5).affine(0.5), h, 21).holds
