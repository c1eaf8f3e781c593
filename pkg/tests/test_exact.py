"""精确算术与求和恒等式"""

from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st
from scipy import integrate

from beurling_lab.core.exceptions import DomainError
from beurling_lab.exact import (
    ExactScalar,
    boundary_term,
    center_value,
    coefficient,
    e9_consistent,
    e9_printed,
    fj_integral,
    format_fraction,
    int_I,
    pi_coefficient_closed_form,
    square_moment,
    sum_S,
    suma_lhs,
    telescope_prefactor,
    telescope_step,
)


def test_int_I_base_cases():
    assert int_I((1, 0)) == ExactScalar.pi(Fraction(1, 4))
    assert int_I((2, 0)) == ExactScalar(Fraction(1, 4), Fraction(1, 8))
    assert int_I((3, 1)) == ExactScalar.pi(Fraction(1, 32))


def test_int_I_rejects_invalid_key():
    with pytest.raises(DomainError):
        int_I((2, 2))
    with pytest.raises(DomainError):
        int_I((0, 0))


@pytest.mark.parametrize("d", range(1, 9))
def test_pi_coefficient_matches_closed_form(d):
    for n in range(d):
        value = int_I((d, n))
        assert value.c_invpi == 0
        assert value.c_pi == pi_coefficient_closed_form(d, n)


@pytest.mark.parametrize("d", range(1, 9))
def test_int_I_matches_one_dimensional_quadrature(d):
    for n in range(d):
        reference, _ = integrate.quad(
            lambda x, n=n: x ** (2 * n) / (x * x + 1.0) ** d, 0.0, 1.0, epsabs=1e-14, epsrel=1e-14
        )
        assert abs(int_I((d, n)).numeric() - reference) <= 1e-10


def test_int_I_satisfies_integration_by_parts_recurrence():
    for d in range(2, 13):
        for n in range(1, d):
            rhs = ExactScalar.rational(boundary_term(d)) + int_I((d - 1, n - 1)).scale(
                Fraction(2 * n - 1, 2 * (d - 1))
            )
            assert int_I((d, n)) == rhs
    assert boundary_term(2) == Fraction(-1, 4)


def test_fj_factors_never_vanish():
    for j in range(1, 9):
        for m in range(2 * j):
            assert not int_I((2 * j + 1, m + 1)).is_zero()


def test_fj_integral_shape():
    assert fj_integral(1) == ExactScalar(Fraction(1), Fraction(-1, 4))
    for j in range(1, 7):
        value = fj_integral(j)
        assert value.c_pi == Fraction(-1, 4)
        assert value.c_invpi == 0


def test_center_value_dichotomy():
    assert center_value(2) == ExactScalar(Fraction(1), Fraction(0), Fraction(-4))
    assert center_value(2).numeric() == pytest.approx(-0.2732395447, abs=1e-9)
    for k in range(1, 11):
        assert center_value(k).is_zero() == (k % 2 == 1)


def test_sum_S_values():
    assert sum_S(1) == Fraction(-2, 3)
    assert sum_S(2) == Fraction(-16, 35)


@pytest.mark.parametrize("j", range(1, 9))
def test_suma_identity(j):
    assert suma_lhs(j) == -1
    assert coefficient(j) * sum_S(j) == -1


def test_e9_forms():
    for j in range(1, 6):
        assert e9_consistent(j) == sum_S(j)
        assert e9_printed(j) != sum_S(j)


def test_telescope_first_step():
    assert telescope_step(1, 0) == Fraction(-2, 3)
    assert telescope_step(1, 1) == Fraction(1, 3)
    assert telescope_prefactor(1, 1) == -2
    assert telescope_step(2, 0) == Fraction(-16, 35)


@given(st.integers(min_value=1, max_value=7), st.data())
def test_telescope_preserves_value(j, data):
    step = data.draw(st.integers(min_value=0, max_value=2 * j - 1))
    assert telescope_prefactor(j, step) * telescope_step(j, step) == sum_S(j)


def test_telescope_step_range():
    with pytest.raises(DomainError):
        telescope_step(1, 2)


def test_square_moment():
    assert square_moment(0) == 4
    assert square_moment(4) == Fraction(-16, 15)
    for n in (1, 2, 3, 5, 6, 7, 9, 10, 11):
        assert square_moment(n) == 0


def test_big_integers_do_not_overflow():
    # (4j)! 在 j = 6 时已超过 64 位
    assert suma_lhs(12) == -1


def test_exact_scalar_algebra():
    x = ExactScalar(Fraction(1, 2), Fraction(3), Fraction(0))
    assert x - x == 0
    assert (2 * x).c_pi == 6
    assert x.divide_by_pi() == ExactScalar(Fraction(3), Fraction(0), Fraction(1, 2))
    with pytest.raises(DomainError):
        ExactScalar(c_invpi=Fraction(1)).divide_by_pi()
    with pytest.raises(TypeError):
        ExactScalar(c_const=0.5)


def test_canonical_format():
    assert center_value(2).canonical() == "1/1 + 0/1*pi + -4/1/pi"
    assert format_fraction(Fraction(-16, 35)) == "-16/35"
