"""网格场、二进制格式与 Fourier 乘子"""

import math

import numpy as np
import pytest

from beurling_lab.core.exceptions import DomainError, FormatError
from beurling_lab.experiments.builtin.spectral import band_max_error, disk_convergence
from beurling_lab.quadrature import UNIT_DISK, UNIT_SQUARE, Integrand, far_field_f
from beurling_lab.spectral import (
    GridField,
    beurling_grid,
    frequency_lattice,
    inverse_beurling_grid,
    parseval_defect,
    raised_cosine_taper,
    read_field,
    sample,
    write_field,
)
from beurling_lab.spectral.grid import MAGIC


@pytest.fixture
def bump_field():
    rng = np.random.default_rng(3)
    bump = Integrand(lambda w: np.exp(-np.abs(w) ** 2) * (1 + 0.5j * w.real), label="bump")
    field = sample(bump, 64, 4.0)
    return field.with_samples(field.samples + 0.01 * rng.standard_normal((64, 64)))


def test_grid_field_validation():
    with pytest.raises(DomainError):
        GridField(np.zeros((8, 8)), 1.0)
    with pytest.raises(DomainError):
        GridField(np.zeros((48, 48)), 1.0)
    with pytest.raises(DomainError):
        GridField(np.zeros((16, 32)), 1.0)
    with pytest.raises(DomainError):
        GridField(np.zeros((16, 16)), 0.0)


def test_grid_field_is_read_only():
    field = GridField(np.ones((16, 16)), 2.0)
    assert field.h == pytest.approx(0.25)
    with pytest.raises(ValueError):
        field.samples[0, 0] = 3.0


def test_sample_constant_and_indicators():
    assert np.all(sample(Integrand.constant(1.0), 16, 1.0).samples == 1.0)

    square = sample(Integrand.indicator(UNIT_SQUARE), 256, 4.0)
    inside = np.abs(square.nodes().real) < 1
    inside &= np.abs(square.nodes().imag) < 1
    np.testing.assert_array_equal(square.samples.real, inside.astype(float))
    assert square.samples.real.sum() * square.h ** 2 == pytest.approx(4.0)

    disk = sample(Integrand.indicator(UNIT_DISK), 256, 4.0)
    assert disk.samples.real.sum() * disk.h ** 2 == pytest.approx(math.pi, rel=0.02)


def test_sample_zeroes_singular_node():
    f = Integrand(lambda w: np.ones(np.shape(w)), singular_point=complex(0.0625, 0.0625))
    field = sample(f, 16, 1.0)
    assert field.value_at(0.0625 + 0.0625j) == 0
    assert field.samples.real.sum() == 255


def test_taper_is_one_inside():
    taper = raised_cosine_taper(64, 4.0, 0.25)
    assert taper[32, 32] == 1.0
    assert 0 < taper[0, 0] < 1
    with pytest.raises(DomainError):
        raised_cosine_taper(64, 4.0, 1.5)


def test_frequency_lattice_zero_mode():
    xi = frequency_lattice(32, 2.0)
    assert xi[0, 0] == 0
    assert xi[1, 0].real == pytest.approx(2 * math.pi / 4.0)
    assert xi[0, 1].imag == pytest.approx(2 * math.pi / 4.0)


def test_parseval_and_algebra(bump_field):
    assert parseval_defect(1, bump_field) <= 1e-10
    assert parseval_defect(3, bump_field) <= 1e-10

    centered = bump_field.samples - bump_field.mean()
    back = inverse_beurling_grid(2, beurling_grid(2, bump_field))
    np.testing.assert_allclose(back.samples, centered, atol=1e-10)

    twice = beurling_grid(1, beurling_grid(1, bump_field))
    np.testing.assert_allclose(twice.samples, beurling_grid(2, bump_field).samples, atol=1e-10)


def test_constant_field_is_annihilated():
    field = GridField(np.full((32, 32), 2.5 + 1j), 3.0)
    assert np.max(np.abs(beurling_grid(1, field).samples)) < 1e-12


def test_order_must_be_positive(bump_field):
    with pytest.raises(DomainError):
        beurling_grid(0, bump_field)
    with pytest.raises(DomainError):
        inverse_beurling_grid(-1, bump_field)


def test_disk_image_matches_closed_form():
    field = sample(Integrand.indicator(UNIT_DISK), 1024, 4.0)
    image = beurling_grid(1, field)
    assert abs(image.value_at(2.0 + 0j) + 0.25) <= 0.05 * 0.25
    interior = np.abs(image.nodes()) < 0.8
    assert np.max(np.abs(image.samples[interior])) <= 0.05


@pytest.mark.slow
def test_disk_exterior_error_halves_when_n_doubles():
    coarse, fine = disk_convergence((512, 1024), 8.0)
    assert 0.35 <= fine / coarse <= 0.65


def test_band_max_error_of_exact_field_is_zero():
    field = sample(lambda w: np.where(np.abs(w) > 1.0, -1.0 / w ** 2, 0.0), 64, 4.0)
    assert band_max_error(field) <= 1e-14


def test_inverse_square_far_field():
    field = sample(Integrand.indicator(UNIT_SQUARE), 1024, 64.0)
    image = inverse_beurling_grid(1, field)
    w = 10.0 * (1 + 1j) / math.sqrt(2.0)
    node = complex(image.nodes()[image.nearest_index(w)])
    expected = far_field_f(node, 16)
    assert abs(image.value_at(w) - expected) <= 0.1 * abs(expected)


def test_binary_round_trip(tmp_path, bump_field):
    path = write_field(tmp_path / "bump.bgf", bump_field)
    raw = path.read_bytes()
    assert raw[:4] == MAGIC
    assert len(raw) == 16 + 64 * 64 * 16
    restored = read_field(path, expected_n=64)
    assert restored.half_width == bump_field.half_width
    np.testing.assert_array_equal(restored.samples, bump_field.samples)


def test_binary_format_errors(tmp_path, bump_field):
    path = write_field(tmp_path / "field.bgf", bump_field)
    with pytest.raises(FormatError):
        read_field(path, expected_n=128)

    bad_magic = tmp_path / "magic.bgf"
    bad_magic.write_bytes(b"XXXX" + path.read_bytes()[4:])
    with pytest.raises(FormatError):
        read_field(bad_magic)

    truncated = tmp_path / "short.bgf"
    truncated.write_bytes(path.read_bytes()[:-16])
    with pytest.raises(FormatError):
        read_field(truncated)

    tiny = tmp_path / "tiny.bgf"
    tiny.write_bytes(b"BG")
    with pytest.raises(FormatError):
        read_field(tiny)
