"""正方形截断反例与扇形函数"""

import math

import numpy as np
import pytest

from beurling_lab.core.config import QuadratureConfig
from beurling_lab.core.exceptions import DomainError
from beurling_lab.counterexample import (
    CounterexamplePoint,
    SectorFunction,
    counterexample_ratio,
    counterexample_value,
    counterexample_value_with_error,
    linear_fit,
    point_config,
    theorem_b_integral,
    theorem_b_integral_with_error,
)
from beurling_lab.maximal import EpsilonSet, bstar_square, square_indicator_maximal
from beurling_lab.quadrature import inverse_square_integrand


def test_counterexample_point_geometry():
    pt = CounterexamplePoint(alpha=8.0)
    assert pt.m == 5.0
    assert pt.z == 8 + 8j
    assert pt.eps == 26.0
    assert pt.modulus == pytest.approx(8.0 * math.sqrt(2.0))
    with pytest.raises(ValueError):
        CounterexamplePoint(alpha=2.0)
    with pytest.raises(ValueError):
        CounterexamplePoint(alpha=8.0, m=0.0)


def test_point_config_scales_tolerance():
    cfg = QuadratureConfig(abs_tol=1e-8)
    assert point_config(CounterexamplePoint(alpha=8.0), cfg).abs_tol == pytest.approx(1e-8)
    assert point_config(CounterexamplePoint(alpha=16.0), cfg).abs_tol == pytest.approx(2.5e-9)


def test_closed_form_denominator():
    for alpha in (8.0, 16.0, 32.0, 64.0, 128.0):
        z = CounterexamplePoint(alpha=alpha).z
        assert square_indicator_maximal(z) * (alpha + 1.0) ** 2 == pytest.approx(1.0, abs=1e-12)


def test_linear_fit():
    fit = linear_fit([1.0, 2.0, 3.0, 4.0], [3.0, 5.0, 7.0, 9.0])
    assert fit.slope == pytest.approx(2.0)
    assert fit.intercept == pytest.approx(1.0)
    assert fit.r_squared == pytest.approx(1.0)
    with pytest.raises(DomainError):
        linear_fit([1.0], [2.0])


def test_sector_function_shape():
    g = SectorFunction(k=2, outer_radius=30.0)
    assert len(g.sectors()) == 4
    values = g(np.array([5.0 + 0j, 2.0 + 0j, 5.0 * np.exp(1j * math.pi / 8), 40.0 + 0j]))
    np.testing.assert_array_equal(values, [1.0, 0.0, 0.0, 0.0])
    assert SectorFunction(k=2, outer_radius=3.0 * math.e).reference_integral() == pytest.approx(
        math.sqrt(3.0)
    )


def test_sector_function_validation():
    with pytest.raises(ValueError):
        SectorFunction(k=3, outer_radius=30.0)
    with pytest.raises(ValueError):
        SectorFunction(k=2, outer_radius=2.0)


def test_theorem_b_integral_requires_positive_j():
    with pytest.raises(DomainError):
        theorem_b_integral(SectorFunction(k=2, outer_radius=30.0), j_max=0)


@pytest.mark.slow
def test_theorem_b_integral_reference():
    cfg = QuadratureConfig(abs_tol=1e-8)
    value, bound = theorem_b_integral(SectorFunction(k=2, outer_radius=3.0 * math.e), 1, cfg)
    assert bound == 1.0
    assert value.real == pytest.approx(math.sqrt(3.0), rel=0.02)
    small, _ = theorem_b_integral(SectorFunction(k=2, outer_radius=30.0), 1, cfg)
    large, _ = theorem_b_integral(SectorFunction(k=2, outer_radius=300.0), 1, cfg)
    assert large.real / small.real == pytest.approx(2.0, rel=0.1)


@pytest.mark.slow
def test_theorem_b_integral_reports_quadrature_error():
    cfg = QuadratureConfig(abs_tol=1e-8)
    sector = SectorFunction(k=2, outer_radius=3.0 * math.e)
    result = theorem_b_integral_with_error(sector, 3, cfg)
    assert result.iterations == 3
    assert result.bound == 1.0
    assert 0.0 <= result.error <= 1e-6
    assert abs(result.value.real - sector.reference_integral()) <= 0.02 * sector.reference_integral()
    assert result.quotient == result.value.real
    assert theorem_b_integral(sector, 3, cfg) == (result.value, result.bound)


@pytest.mark.slow
def test_counterexample_ratio_grows():
    cfg = QuadratureConfig(abs_tol=1e-8)
    small = counterexample_ratio(CounterexamplePoint(alpha=8.0), cfg)
    large = counterexample_ratio(CounterexamplePoint(alpha=64.0), cfg)
    assert 0 < small < large


@pytest.mark.slow
def test_counterexample_refinement_and_domination():
    cfg = QuadratureConfig(abs_tol=1e-8)
    pt = CounterexamplePoint(alpha=8.0)
    value = counterexample_value(pt, cfg)
    refined = counterexample_value_with_error(pt, cfg.with_tolerance(2.5e-9, max_depth=60)).value
    assert abs(refined - value) <= 1e-6 * abs(value)

    mirrored = counterexample_ratio(pt, cfg, reflected=True)
    assert mirrored == pytest.approx(counterexample_ratio(pt, cfg), rel=1e-6)

    radius = cfg.outer_radius_factor * pt.modulus
    bstar = bstar_square(
        1, inverse_square_integrand(), pt.z, EpsilonSet(levels=(pt.eps,)), point_config(pt, cfg), radius
    )
    assert bstar == pytest.approx(abs(value - 4.0 / (math.pi * radius ** 2)), rel=1e-6)
