"""网格极大算子、B*_S 与 Cotlar 比值场"""

import math

import numpy as np
import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from beurling_lab.core.exceptions import DomainError
from beurling_lab.quadrature import UNIT_DISK, UNIT_SQUARE, Integrand
from beurling_lab.maximal import (
    EpsilonSet,
    WindowSet,
    bstar_square,
    bstar_square_grid,
    cotlar_battery,
    cotlar_ratio_field,
    exclusion_radius,
    hl_maximal,
    interior_mask,
    iterate_maximal,
    iterated_square_indicator,
    maximal_at,
    square_indicator_maximal,
)
from beurling_lab.maximal.truncated import truncation_kernel
from beurling_lab.spectral import GridField, sample


def brute_square_maximal(w: complex) -> float:
    """在细的 r 网格上直接取 |Q(w,2r) ∩ Q₀| / |Q(w,2r)| 的最大值"""
    r = np.geomspace(1e-3, 100.0, 5000)
    ox = np.clip(np.minimum(w.real + r, 1.0) - np.maximum(w.real - r, -1.0), 0.0, None)
    oy = np.clip(np.minimum(w.imag + r, 1.0) - np.maximum(w.imag - r, -1.0), 0.0, None)
    return float(np.max(ox * oy / (4.0 * r * r)))


@pytest.fixture
def square_field():
    return sample(Integrand.indicator(UNIT_SQUARE), 512, 16.0)


def test_window_set_validation():
    with pytest.raises(ValueError):
        WindowSet(half_sides=(1.0, 0.5))
    with pytest.raises(ValueError):
        WindowSet(half_sides=())
    with pytest.raises(DomainError):
        WindowSet.dyadic(0.5, 0.1)


def test_window_cell_radii():
    windows = WindowSet(half_sides=(0.05, 0.25, 1.0))
    assert windows.cell_radii(0.1) == (0, 2, 10)
    assert windows.margin(0.1) == 10
    assert len(WindowSet.dyadic(0.25, 2.0)) == 4


def test_epsilon_set_geometric():
    eps = EpsilonSet.geometric(1.0, 4.0)
    np.testing.assert_allclose(eps.levels, [1.0, math.sqrt(2), 2.0, 2 * math.sqrt(2), 4.0])
    assert len(eps.with_levels(3.0)) == 6
    assert len(eps.with_levels(2.0)) == 5


def test_constant_field():
    field = GridField(np.full((32, 32), -3 + 4j), 2.0)
    out = hl_maximal(field, WindowSet.for_grid(field))
    np.testing.assert_allclose(out.samples, 5.0)


def test_square_indicator_grid_value(square_field):
    windows = WindowSet.for_grid(square_field)
    value = maximal_at(square_field, windows, 7 + 7j)
    assert value == pytest.approx(1.0 / 64.0, rel=0.05)


def test_domination_and_iteration(square_field):
    windows = WindowSet.for_grid(square_field)
    once = iterate_maximal(square_field, windows, 1)
    np.testing.assert_array_equal(once.samples, hl_maximal(square_field, windows).samples)
    assert np.all(once.samples >= np.abs(square_field.samples))
    twice = iterate_maximal(square_field, windows, 2)
    assert np.all(twice.samples >= once.samples)
    assert twice.value_at(7 + 7j) >= once.value_at(7 + 7j)
    with pytest.raises(DomainError):
        iterate_maximal(square_field, windows, 0)


@settings(max_examples=25, deadline=None)
@given(
    f=arrays(np.float64, (16, 16), elements=st.floats(-5, 5)),
    g=arrays(np.float64, (16, 16), elements=st.floats(-5, 5)),
)
def test_maximal_is_sublinear(f, g):
    windows = WindowSet.dyadic(0.125, 0.5)
    mf = hl_maximal(GridField(f, 1.0), windows).samples
    mg = hl_maximal(GridField(g, 1.0), windows).samples
    mfg = hl_maximal(GridField(f + g, 1.0), windows).samples
    assert np.all(mfg <= mf + mg + 1e-9)


def test_interior_mask():
    mask = interior_mask(16, 3)
    assert mask.sum() == 10 * 10
    assert not interior_mask(16, 8).any()


def test_square_indicator_maximal_closed_form():
    assert square_indicator_maximal(7 + 7j) == pytest.approx(1.0 / 64.0, abs=1e-15)
    assert square_indicator_maximal(0j) == 1.0
    assert square_indicator_maximal(1 + 0j) == pytest.approx(0.5)
    values = square_indicator_maximal(np.array([0j, 7 + 7j]))
    assert values.shape == (2,)


@settings(max_examples=40, deadline=None)
@given(x=st.floats(-12, 12), y=st.floats(-12, 12))
def test_square_indicator_maximal_matches_scan(x, y):
    # 边界附近 r → 0 的极限需要比扫描网格更小的窗口
    assume(abs(abs(x) - 1.0) > 1e-2 and abs(abs(y) - 1.0) > 1e-2)
    w = complex(x, y)
    exact = square_indicator_maximal(w)
    scanned = brute_square_maximal(w)
    assert exact >= scanned - 1e-12
    assert exact <= scanned * 1.02 + 1e-12


def test_exclusion_radius():
    assert exclusion_radius(0.1, 0.1) == 0
    assert exclusion_radius(0.3, 0.1) == 1
    assert exclusion_radius(0.5, 0.1) == 2


def test_truncation_kernel_layout():
    kernel = truncation_kernel(1, 16, 0.25)
    assert kernel.shape == (32, 32)
    assert kernel[0, 0] == 0
    assert np.all(kernel[16, :] == 0)
    assert kernel[1, 0] == pytest.approx(-1.0 / (math.pi * 0.25 ** 2) * 0.25 ** 2)


def test_bstar_grid_monotone_in_eps_set():
    field = sample(Integrand.indicator(UNIT_DISK), 64, 4.0)
    small = EpsilonSet(levels=(0.5, 1.0))
    large = small.with_levels(0.25, 2.0, 3.0)
    lo = bstar_square_grid(1, field, small).samples
    hi = bstar_square_grid(1, field, large).samples
    assert np.all(hi >= lo)


def test_bstar_square_quarter_turn_cancellation():
    disk = Integrand.indicator(UNIT_DISK)
    assert bstar_square(1, disk, 0j, EpsilonSet(levels=(0.5, 1.0, 1.5))) < 1e-7


def test_cotlar_ratio_field_zero_is_all_flagged():
    result = cotlar_ratio_field(1, Integrand.constant(0.0), 64, 8.0)
    assert result.all_flagged
    assert math.isnan(result.max_ratio())
    assert result.flagged_count() == 64 * 64


def test_cotlar_ratio_field_gaussian_is_finite():
    gaussian = cotlar_battery(0)["gaussian"]
    result = cotlar_ratio_field(1, gaussian, 64, 8.0)
    assert not result.all_flagged
    assert math.isfinite(result.max_ratio())
    assert result.percentile(99.0) <= result.max_ratio()


def test_cotlar_battery_is_seeded():
    first = cotlar_battery(5)["band_limited"]
    again = cotlar_battery(5)["band_limited"]
    other = cotlar_battery(6)["band_limited"]
    w = np.array([0.3 + 0.1j, -1.0 + 2.0j])
    np.testing.assert_array_equal(first(w), again(w))
    assert not np.allclose(first(w), other(w))
    assert sorted(cotlar_battery(0)) == ["band_limited", "disk", "gaussian", "shifted_square"]


@pytest.mark.slow
def test_iterated_square_indicator_exceeds_single():
    z = 7 + 7j
    assert iterated_square_indicator(z) >= square_indicator_maximal(z)
