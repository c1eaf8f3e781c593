"""区域求积、主值积分与截断变换"""

import math

import numpy as np
import pytest

from beurling_lab.core.config import QuadratureConfig
from beurling_lab.core.exceptions import DomainError
from beurling_lab.kernels import eval_kernel
from beurling_lab.quadrature import (
    UNIT_DISK,
    UNIT_SQUARE,
    Difference,
    Disk,
    Integrand,
    Rectangle,
    ak_tail,
    far_field_error_bound,
    far_field_f,
    geometric_split_residual,
    integrate,
    integrate_with_error,
    inverse_square_f,
    pv_integral,
    rectangle_kernel_integral,
    square_transform,
    tail_correction,
    trunc_disk,
    trunc_square,
)

CENTER_2 = 1.0 - 4.0 / math.pi


@pytest.fixture
def tight():
    return QuadratureConfig(abs_tol=1e-10)


@pytest.fixture
def cfg():
    return QuadratureConfig(abs_tol=1e-8)


@pytest.fixture
def disk():
    return Integrand.indicator(UNIT_DISK, label="disk")


def test_areas(tight):
    one = Integrand.constant(1.0)
    assert integrate(one, UNIT_SQUARE, tight) == pytest.approx(4.0, abs=1e-9)
    assert integrate(one, UNIT_DISK, tight) == pytest.approx(math.pi, abs=1e-9)


def test_area_error_estimate_covers_true_error(tight):
    result = integrate_with_error(Integrand.constant(1.0), Difference(UNIT_SQUARE, UNIT_DISK), tight)
    assert abs(result.value - (4.0 - math.pi)) <= max(result.error, 1e-12) + 1e-12


def test_b2_outside_unit_disk(cfg):
    b2 = Integrand(lambda w: eval_kernel(2, w), singular_point=0j, label="b2")
    value = integrate(b2, Difference(UNIT_SQUARE, UNIT_DISK), cfg)
    assert value.real == pytest.approx(CENTER_2, abs=1e-7)
    assert abs(value.imag) < 1e-7


def test_pv_integral_center_values(cfg):
    one = Integrand.constant(1.0)
    assert abs(pv_integral(1, one, cfg)) < 1e-8
    assert abs(pv_integral(2, one, cfg) - CENTER_2) < 1e-8
    assert abs(pv_integral(3, one, cfg)) < 1e-8


def test_pv_integral_odd_integrand(cfg):
    identity = Integrand(lambda w: w, label="w")
    assert abs(pv_integral(1, identity, cfg)) < 1e-8


def test_trunc_disk_examples(cfg, disk):
    assert abs(trunc_disk(1, disk, 0j, 1.5, cfg)) < 1e-12
    assert abs(trunc_disk(1, disk, 3 + 0j, 1.0, cfg) - (-1.0 / 9.0)) < 1e-8


def test_trunc_square_examples(cfg, disk):
    assert abs(trunc_square(1, disk, 0j, 2.5, cfg)) < 1e-12
    assert abs(trunc_square(1, disk, 0j, 0.5, cfg)) < 1e-8
    assert abs(trunc_square(1, disk, 3 + 0j, 1.0, cfg) - (-1.0 / 9.0)) < 1e-8
    square = Integrand.indicator(UNIT_SQUARE, label="square")
    assert abs(trunc_disk(2, square, 0j, 2.0, cfg)) < 1e-12


def test_truncation_rejects_nonpositive_eps(disk):
    with pytest.raises(DomainError):
        trunc_square(1, disk, 0j, 0.0)
    with pytest.raises(DomainError):
        trunc_disk(1, disk, 0j, -1.0)


def test_unbounded_integrand_needs_decay_hint():
    with pytest.raises(DomainError):
        trunc_disk(1, Integrand.constant(1.0), 0j, 1.0)


@pytest.mark.parametrize(
    "k, region, z, eps",
    [
        (1, UNIT_DISK, 2.2 + 0j, 0.7),
        (2, UNIT_SQUARE, 3 + 1j, 1.3),
        (1, UNIT_DISK, 0j, 3.0),
    ],
)
def test_geometric_split_residual(cfg, k, region, z, eps):
    f = Integrand.indicator(region)
    assert geometric_split_residual(k, f, z, eps, cfg) <= 3 * cfg.abs_tol


@pytest.mark.slow
def test_geometric_split_residual_randomized(cfg):
    rng = np.random.default_rng(7)
    f = Integrand.indicator(Rectangle(0.2 + 0.1j, 0.8, 0.6))
    for _ in range(20):
        k = int(rng.integers(1, 4))
        z = complex(rng.uniform(-2, 2), rng.uniform(-2, 2))
        eps = float(rng.uniform(0.2, 2.0))
        direction = "square" if rng.random() < 0.5 else "disk"
        assert geometric_split_residual(k, f, z, eps, cfg, direction) <= 3 * cfg.abs_tol


def test_ak_tail_domain():
    with pytest.raises(DomainError):
        ak_tail(1, 2 + 2j)


@pytest.mark.slow
def test_ak_tail_even_order_leading_term(cfg):
    z = 16.0 + 0j
    h = ak_tail(2, z, cfg.with_tolerance(1e-12))
    leading = np.conj(eval_kernel(2, z)) * CENTER_2
    assert abs(h - leading) <= 0.1 * abs(leading)


@pytest.mark.slow
@pytest.mark.parametrize("z", [5.0 + 0j, 5.0 + 1j])
def test_ak_tail_conjugation_symmetry(cfg, z):
    tight = cfg.with_tolerance(1e-12)
    upper = ak_tail(1, z, tight)
    lower = ak_tail(1, z.conjugate(), tight)
    assert abs(lower - upper.conjugate()) <= 1e-9


def test_far_field_leading_term():
    assert far_field_f(10.0 + 0j, 1) == pytest.approx(-4.0 / (100.0 * math.pi), rel=1e-12)
    # μ₂ = 0，所以前 3 项与第 1 项相同
    assert far_field_f(10.0 + 0j, 3) == far_field_f(10.0 + 0j, 1)
    with pytest.raises(DomainError):
        far_field_f(1.0 + 1j, 4)


def test_far_field_error_bound_is_certified():
    w = 5.0 * np.exp(1j * np.linspace(0, 2 * np.pi, 17))
    exact = -np.conj(rectangle_kernel_integral(w)) / math.pi
    for terms in (1, 4, 8, 16):
        err = np.abs(far_field_f(w, terms) - exact)
        assert np.all(err <= far_field_error_bound(w, terms) + 1e-15)


def test_seam_agreement():
    w = 4.0 * np.exp(1j * np.linspace(0.05, 6.2, 23))
    near = -np.conj(rectangle_kernel_integral(w)) / math.pi
    np.testing.assert_allclose(inverse_square_f(w), near, atol=1e-12)


def test_square_transform_against_quadrature(cfg):
    z = 1.7 + 0.4j
    kernel = Integrand(lambda w: eval_kernel(1, z - w), singular_point=None)
    numeric = integrate(kernel, UNIT_SQUARE, cfg)
    assert abs(square_transform(1, z) - numeric) < 1e-7
    with pytest.raises(DomainError):
        square_transform(2, z)


def test_tail_correction():
    assert tail_correction(100.0, 8 + 8j) == pytest.approx(4.0 / (math.pi * 1e4))
    with pytest.raises(DomainError):
        tail_correction(10.0, 8 + 8j)


def test_disk_contains_and_regions():
    region = Difference(Disk(0j, 2.0), Rectangle.square(0j, 1.0))
    pts = np.array([0j, 1.5 + 0j, 3 + 0j])
    assert list(region.contains(pts)) == [False, True, False]
