"""核与乘子"""

import cmath
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from beurling_lab.core.exceptions import DomainError
from beurling_lab.kernels import KernelSpec, circle_mean, eval_kernel, eval_multiplier, inverse_multiplier


@pytest.mark.parametrize(
    "k, z, expected",
    [
        (1, 1.0 + 0j, -1.0 / math.pi),
        (1, 1j, 1.0 / math.pi),
        (2, 1.0 + 0j, 2.0 / math.pi),
    ],
)
def test_eval_kernel_direct_values(k, z, expected):
    assert eval_kernel(KernelSpec(order=k), z) == pytest.approx(expected, abs=1e-15)


def test_eval_kernel_rejects_origin():
    with pytest.raises(DomainError):
        eval_kernel(1, 0j)
    with pytest.raises(DomainError):
        eval_kernel(2, np.array([1.0, 0.0], dtype=complex))


def test_inverse_kernel_is_conjugate():
    z = np.array([0.3 + 2j, -1.5 + 0.25j, 4 - 4j])
    forward = eval_kernel(KernelSpec(order=3), z)
    inverse = eval_kernel(KernelSpec(order=3, direction="inverse"), z)
    np.testing.assert_allclose(inverse, np.conj(forward), rtol=1e-14)
    assert KernelSpec(order=3).inverse().direction == "inverse"


def test_large_order_stays_finite():
    values = eval_kernel(16, np.exp(1j * np.linspace(0.1, 6.0, 50)))
    assert np.all(np.isfinite(values))
    np.testing.assert_allclose(np.abs(values), 16 / math.pi, rtol=1e-12)


@pytest.mark.parametrize(
    "k, xi, expected",
    [
        (1, 1.0 + 0j, 1.0 + 0j),
        (1, 1j, -1.0 + 0j),
        (3, cmath.exp(1j * math.pi / 4), 1j),
    ],
)
def test_eval_multiplier_values(k, xi, expected):
    assert abs(eval_multiplier(k, xi) - expected) < 1e-14


def test_multiplier_zero_frequency_convention():
    assert eval_multiplier(2, 0j) == 0
    values = eval_multiplier(1, np.array([0j, 2 + 1j]))
    assert values[0] == 0
    assert abs(abs(values[1]) - 1.0) < 1e-15


def test_inverse_multiplier_undoes_forward():
    xi = np.array([1 + 1j, -3 + 0.5j, 2j])
    np.testing.assert_allclose(eval_multiplier(2, xi) * inverse_multiplier(2, xi), 1.0, atol=1e-14)


@pytest.mark.parametrize("k, radius, samples", [(1, 1.0, 256), (2, 0.5, 256), (3, 2.0, 512)])
def test_circle_mean_vanishes(k, radius, samples):
    assert abs(circle_mean(k, radius, samples)) < 1e-12


def test_circle_mean_preconditions():
    with pytest.raises(DomainError):
        circle_mean(2, 1.0, 15)
    with pytest.raises(DomainError):
        circle_mean(1, -1.0, 64)


@settings(max_examples=60, deadline=None)
@given(
    k=st.integers(min_value=1, max_value=8),
    x=st.floats(min_value=-50, max_value=50, allow_nan=False),
    y=st.floats(min_value=-50, max_value=50, allow_nan=False),
    lam=st.floats(min_value=0.01, max_value=100),
)
def test_kernel_is_homogeneous_of_degree_minus_two(k, x, y, lam):
    z = complex(x, y)
    if abs(z) < 1e-3:
        return
    base = eval_kernel(k, z)
    scaled = eval_kernel(k, lam * z)
    assert abs(scaled - base / lam ** 2) <= 1e-12 * abs(base) / lam ** 2


@settings(max_examples=80, deadline=None)
@given(
    k=st.integers(min_value=1, max_value=16),
    x=st.floats(min_value=-50, max_value=50, allow_nan=False),
    y=st.floats(min_value=-50, max_value=50, allow_nan=False),
)
def test_kernel_conjugation_and_rotation(k, x, y):
    z = complex(x, y)
    if abs(z) < 1e-3:
        return
    base = eval_kernel(k, z)
    tol = 1e-12 * abs(base)
    # b_k(z̄) = conj(b_k(z))
    assert abs(eval_kernel(k, z.conjugate()) - base.conjugate()) <= tol
    # b_k(iz) = (−1)^k·b_k(z)
    assert abs(eval_kernel(k, 1j * z) - (-1) ** k * base) <= tol


@settings(max_examples=60, deadline=None)
@given(
    k=st.integers(min_value=1, max_value=12),
    theta=st.floats(min_value=-math.pi, max_value=math.pi),
    r=st.floats(min_value=1e-3, max_value=1e3),
)
def test_multiplier_has_unit_modulus(k, theta, r):
    assert abs(abs(eval_multiplier(k, cmath.rect(r, theta))) - 1.0) < 1e-14
