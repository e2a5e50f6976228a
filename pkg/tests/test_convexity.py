"""
Pytest tests for convexity classification: the Aczel transform, midpoint
defects, (M_phi, M_psi)-convexity verdicts and h-convexity.
"""

import math

import numpy as np
import pytest

from src.convexity import (HKind, HProperty, HSpec, Shape, aczel_transform, h_convexity_defect, h_eval,
                           h_property_check, midpoint_convexity_defect, midpoint_defects, mn_convexity_check)
from src.errors import DomainError
from src.functions import function
from src.interval import Interval
from src.means import Generator
from src.specfun import ln_gamma


# --- Helpers ---

def unit_square():
    return function("power", 2).restricted(-1.0, 1.0)


def negative_square():
    return function("power", 2).restricted(-1.0, 1.0).affine(-1.0)


def all_h():
    return [HSpec.identity(), HSpec.power(0.25), HSpec.power(0.5), HSpec.reciprocal(), HSpec.one()]


# --- Aczel transform ---

def test_aczel_transform_collapses_to_identity():
    """log o id o exp is the identity on the real line."""
    g = aczel_transform(function("identity").restricted(0.5, 8.0), Generator.log(), Generator.log())
    assert g(1.0) == pytest.approx(1.0, rel=1e-15)
    assert g.domain == Interval.closed(math.log(0.5), math.log(8.0))


def test_aczel_transform_domain_is_image():
    g = aczel_transform(function("exp").restricted(0.0, 1.0), Generator.identity(), Generator.identity())
    assert g.domain == Interval.closed(0.0, 1.0)
    assert g(0.5) == pytest.approx(math.exp(0.5))


def test_aczel_transform_of_gamma_is_log_gamma():
    g = aczel_transform(function("gamma").restricted(1.1, 2.0), Generator.identity(), Generator.log())
    for x in (1.1, 1.5, 2.0):
        assert g(x) == pytest.approx(ln_gamma(x), abs=1e-12)


def test_aczel_transform_needs_compatible_generator():
    """log is not defined at 0, which power:0.5 includes."""
    with pytest.raises(DomainError):
        aczel_transform(function("power", 0.5), Generator.log(), Generator.identity())


def test_aczel_transform_checks_range_of_f():
    """x^3 is negative on [-1, 0), where log is undefined; the transform is rejected up front."""
    with pytest.raises(DomainError):
        aczel_transform(function("power", 3).restricted(-1.0, 1.0), Generator.identity(), Generator.log())
    with pytest.raises(DomainError):
        aczel_transform(function("sin").restricted(0.0, 4.0), Generator.identity(), Generator.power(-1))
    aczel_transform(function("sin").restricted(0.5, 3.0), Generator.identity(), Generator.power(-1))


# --- Midpoint defects ---

def test_midpoint_defect_of_square_is_zero():
    defect = midpoint_convexity_defect(lambda x: x * x, Interval.closed(-1.0, 1.0), 51)
    assert defect.value == 0.0
    assert defect.holds


def test_midpoint_defect_of_negative_square():
    """-(u - v)^2 / 4 is smallest at the diameter: -1 at (-1, 1)."""
    defect = midpoint_convexity_defect(lambda x: -x * x, Interval.closed(-1.0, 1.0), 51)
    assert defect.value == pytest.approx(-1.0, abs=1e-12)
    assert defect.witness == (-1.0, 1.0)
    assert not defect.holds


def test_midpoint_defect_of_exp():
    assert midpoint_convexity_defect(math.exp, Interval.closed(0.0, 1.0), 101).holds


def test_midpoint_defects_use_function_specs():
    both = midpoint_defects(negative_square(), Interval.closed(-1.0, 1.0), 21)
    assert both.concave.holds
    assert not both.convex.holds


def test_midpoint_defect_needs_three_nodes():
    with pytest.raises(DomainError):
        midpoint_convexity_defect(math.exp, Interval.closed(0.0, 1.0), 2)


# --- (M_phi, M_psi)-convexity ---

def test_ordinary_convexity_round_trip():
    report = mn_convexity_check(unit_square(), Generator.identity(), Generator.identity(), 101)
    assert report.verdict is Shape.CONVEX
    assert not report.affine
    assert mn_convexity_check(negative_square(), Generator.identity(), Generator.identity(), 101).verdict \
        is Shape.CONCAVE


def test_exp_is_exactly_log_affine():
    """log o exp is affine: both defects vanish to 1e-12."""
    report = mn_convexity_check(function("exp"), Generator.identity(), Generator.log())
    assert report.affine
    assert report.verdict is Shape.CONVEX
    assert abs(report.convex_defect.value) <= 1e-12
    assert abs(report.concave_defect.value) <= 1e-12


def test_gamma_is_log_convex():
    report = mn_convexity_check(function("gamma").restricted(1.1, 2.0), Generator.identity(), Generator.log())
    assert report.verdict is Shape.CONVEX
    assert not report.affine


def test_hypergeometric_is_arithmetic_harmonic_convex():
    """1/F is concave for a = b = 1/2, c = 3/4; with decreasing psi the verdict flips."""
    f = function("hyp2f1", 0.5, 0.5, 0.75).restricted(0.05, 0.95)
    report = mn_convexity_check(f, Generator.identity(), Generator.power(-1))
    assert report.transform_verdict is Shape.CONCAVE
    assert report.verdict is Shape.CONVEX


def test_direction_rule_compares_raw_transform():
    """For decreasing psi the verdict is the opposite of the transform's own verdict."""
    f = function("hyp2f1", 0.5, 0.5, 0.75).restricted(0.05, 0.95)
    psi = Generator.power(-1)
    report = mn_convexity_check(f, Generator.identity(), psi, 101)
    raw = midpoint_defects(aczel_transform(f, Generator.identity(), psi), Interval.closed(0.05, 0.95), 101)
    assert report.convex_defect == raw.concave
    assert report.concave_defect == raw.convex


def test_volume_is_harmonic_geometric_concave():
    report = mn_convexity_check(function("lp_volume", 2), Generator.power(-1), Generator.log())
    assert report.verdict is Shape.CONCAVE
    assert report.interval == Interval.closed(0.1, 1.0)


def test_cube_is_neither():
    report = mn_convexity_check(function("power", 3).restricted(-1.0, 1.0), Generator.identity(),
                                Generator.identity(), 51)
    assert report.verdict is Shape.NEITHER


# --- h functions ---

def test_h_eval_values():
    assert h_eval(HSpec.power(0.5), 0.25) == 0.5
    assert h_eval(HSpec.reciprocal(), 0.5) == 2.0
    assert h_eval(HSpec.one(), 0.9) == 1.0
    assert HSpec.identity()(0.3) == 0.3


@pytest.mark.parametrize("lam", [0.0, 1.0, -0.2, 1.5])
def test_h_eval_open_interval(lam):
    with pytest.raises(DomainError):
        h_eval(HSpec.identity(), lam)


def test_h_spec_exponent_range():
    with pytest.raises(DomainError):
        HSpec.power(1.5)
    with pytest.raises(DomainError):
        HSpec.power(0.0)


def test_every_h_passes_h1_condition():
    for h in all_h():
        check = h_property_check(h, HProperty.H1_CONDITION, 10_000)
        assert check.value >= -1e-12, h.name


def test_h_properties():
    """sqrt is multiplicative, the identity is affine, 1/l is not concave."""
    assert h_property_check(HSpec.power(0.5), HProperty.SUPERMULTIPLICATIVE).holds
    assert h_property_check(HSpec.power(0.5), HProperty.SUBMULTIPLICATIVE).holds
    assert abs(h_property_check(HSpec.identity(), HProperty.CONCAVE).value) <= 1e-15
    assert not h_property_check(HSpec.reciprocal(), HProperty.CONCAVE).holds
    assert h_property_check(HSpec.one(), HProperty.CONCAVE).holds


def test_declared_properties_are_verified():
    for h in all_h():
        for prop in h.declared_properties:
            assert h_property_check(h, prop).holds, (h.name, prop)


def test_h_kinds():
    assert HSpec.power(0.5).kind is HKind.POWER
    assert HSpec.power(0.5).name == "power:0.5"
    assert HSpec.reciprocal().s == 1.0


# --- h-convexity ---

@pytest.mark.parametrize("s", [0.25, 0.5, 0.75, 1.0])
def test_power_is_breckner_convex(s):
    """t^s is s-convex on [0, 10]."""
    f = function("power", s).restricted(0.0, 10.0)
    assert h_convexity_defect(f, HSpec.power(s)).value >= -1e-10


def test_breckner_family():
    """f(0) = a, f(t) = b t^s + c with b >= 0 and 0 <= c <= a is s-convex."""
    rng = np.random.default_rng(5)
    for _ in range(8):
        s = rng.uniform(0.1, 1.0)
        a = rng.uniform(0.0, 3.0)
        c = rng.uniform(0.0, a)
        b = rng.uniform(0.0, 3.0)
        f = function("breckner", s, a, b, c)
        assert h_convexity_defect(f, HSpec.power(s), 21).holds, (s, a, b, c)


def test_sqrt_on_zero_four():
    assert h_convexity_defect(function("power", 0.5).restricted(0.0, 4.0), HSpec.power(0.5)).holds


def test_monotone_nonnegative_is_godunova_levin():
    assert h_convexity_defect(function("exp").restricted(0.0, 1.0), HSpec.reciprocal()).holds
    assert h_convexity_defect(function("neglog").restricted(0.1, 1.0), HSpec.reciprocal()).holds


def test_exp_is_convex():
    assert h_convexity_defect(function("exp").restricted(0.0, 1.0), HSpec.identity()).holds


def test_concave_function_is_not_convex():
    defect = h_convexity_defect(negative_square(), HSpec.identity(), 21)
    assert not defect.holds
    assert len(defect.witness) == 3


def test_h_convexity_explicit_interval():
    defect = h_convexity_defect(function("exp"), HSpec.identity(), 11, Interval.closed(-1.0, 1.0))
    assert defect.holds
    with pytest.raises(DomainError):
        h_convexity_defect(function("log"), HSpec.identity(), 11, Interval.closed(-1.0, 1.0))
