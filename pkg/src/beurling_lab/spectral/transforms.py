"""B^k 与 (B^k)^{-1} 的 Fourier 乘子实现"""

import logging
import math
from typing import Optional

import numpy as np
from scipy import fft

from ..core.exceptions import DomainError
from ..kernels import eval_multiplier, inverse_multiplier
from .grid import GridField

logger = logging.getLogger(__name__)


def frequency_lattice(n: int, half_width: float) -> np.ndarray:
    """离散频率 ξ = 2π·fftfreq(N, h)，沿两个轴组合成复数 ξ_x + iξ_y"""
    h = 2.0 * half_width / n
    freq = 2.0 * math.pi * fft.fftfreq(n, d=h)
    return freq[:, None] + 1j * freq[None, :]


def _apply_multiplier(field: GridField, multiplier: np.ndarray, workers: Optional[int]) -> GridField:
    spectrum = fft.fft2(field.samples.astype(complex), workers=workers)
    result = fft.ifft2(spectrum * multiplier, workers=workers)
    return field.with_samples(result)


def beurling_grid(k: int, field: GridField, workers: Optional[int] = None) -> GridField:
    """乘以 (ξ̄/ξ)^k 后逆变换；零频率置 0，因此输出均值为零"""
    if k < 1:
        raise DomainError(f"阶数必须为正整数: {k}")
    xi = frequency_lattice(field.n, field.half_width)
    return _apply_multiplier(field, eval_multiplier(k, xi), workers)


def inverse_beurling_grid(k: int, field: GridField, workers: Optional[int] = None) -> GridField:
    """乘以 (ξ/ξ̄)^k 后逆变换；零频率置 0"""
    if k < 1:
        raise DomainError(f"阶数必须为正整数: {k}")
    xi = frequency_lattice(field.n, field.half_width)
    return _apply_multiplier(field, inverse_multiplier(k, xi), workers)


def parseval_defect(k: int, field: GridField, workers: Optional[int] = None) -> float:
    """| ‖B^k f‖ − ‖f − mean f‖ | / ‖f − mean f‖"""
    image = beurling_grid(k, field, workers)
    centered = field.with_samples(field.samples - field.mean())
    reference = centered.norm()
    if reference == 0:
        return abs(image.norm())
    return abs(image.norm() - reference) / reference
