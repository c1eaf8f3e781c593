"""正方形截断的极大奇异积分 B*_S 与 Cotlar 比值场

逐点版本 `bstar_square` 直接调用求积；网格版本 `bstar_square_grid` 把核乘单元面积
做离散卷积，排除正方形向外对齐到单元边界（max(|p|,|q|) ≤ m_ε 的单元全部排除）。
所有 ε 共用同一次 f 的 FFT。
"""

import logging
import math
from dataclasses import dataclass
from typing import Dict, Optional

import numpy as np
from scipy import fft

from ..core.config import QuadratureConfig
from ..core.exceptions import DomainError
from ..kernels import eval_kernel
from ..quadrature.integrand import FarFieldDecay, Integrand
from ..quadrature.operators import trunc_square
from ..quadrature.regions import Rectangle, UNIT_DISK
from ..spectral.grid import GridField, sample
from ..spectral.transforms import beurling_grid
from .hardy_littlewood import EpsilonSet, WindowSet, interior_mask, iterate_maximal

logger = logging.getLogger(__name__)

RATIO_FLOOR = 1e-12


def bstar_square(
    k: int,
    f: Integrand,
    z: complex,
    eps_set: EpsilonSet,
    cfg: Optional[QuadratureConfig] = None,
    outer_radius: Optional[float] = None,
) -> float:
    """max_{ε ∈ eps_set} |T^ε_Q f(z)|，真实上确界的下界"""
    best = 0.0
    for eps in eps_set.levels:
        value = abs(trunc_square(k, f, z, eps, cfg, outer_radius))
        logger.debug("B*_S 候选: ε=%.6g |T|=%.6g", eps, value)
        best = max(best, value)
    return best


def exclusion_radius(eps: float, h: float) -> int:
    """Q(0, ε) 向外对齐后排除的单元半径 ⌈ε/(2h) − ½⌉"""
    return max(0, math.ceil(eps / (2.0 * h) - 0.5 - 1e-12))


def _offsets(n: int) -> np.ndarray:
    """长度 2N 的循环布局中每个下标对应的偏移 p；下标 N 处的偏移不会被用到"""
    idx = np.arange(2 * n)
    return np.where(idx < n, idx, idx - 2 * n)


def truncation_kernel(k: int, n: int, h: float) -> np.ndarray:
    """K[p, q] = b_k(ph + iqh)·h²，按循环布局存放，原点为 0"""
    p = _offsets(n)
    w = (p[:, None] + 1j * p[None, :]) * h
    kernel = np.zeros(w.shape, dtype=complex)
    nonzero = w != 0
    kernel[nonzero] = eval_kernel(k, w[nonzero]) * h * h
    kernel[n, :] = 0.0
    kernel[:, n] = 0.0
    return kernel


def bstar_square_grid(
    k: int,
    field: GridField,
    eps_set: EpsilonSet,
    workers: Optional[int] = None,
) -> GridField:
    """网格版 B*_S：每个节点上对 ε 取 |Σ_{单元 ∉ Q(0,ε)} f·b_k·h²| 的最大"""
    n, h = field.n, field.h
    size = 2 * n
    padded = np.zeros((size, size), dtype=complex)
    padded[:n, :n] = field.samples
    spectrum = fft.fft2(padded, workers=workers)
    kernel = truncation_kernel(k, n, h)
    p = np.abs(_offsets(n))
    chebyshev = np.maximum(p[:, None], p[None, :])

    best = np.zeros((n, n), dtype=float)
    radii = sorted({exclusion_radius(eps, h) for eps in eps_set.levels})
    for m in radii:
        if m >= n - 1:
            # 排除正方形覆盖全部偏移，截断积分为零
            continue
        masked = np.where(chebyshev <= m, 0.0, kernel)
        conv = fft.ifft2(spectrum * fft.fft2(masked, workers=workers), workers=workers)[:n, :n]
        np.maximum(best, np.abs(conv), out=best)
    logger.debug("网格 B*_S 完成: k=%d, N=%d, %d 个不同的排除半径", k, n, len(radii))
    return GridField(best, field.half_width)


@dataclass(frozen=True)
class CotlarField:
    """B*_S f / M²(B^k f) 的逐节点比值

    分母低于 RATIO_FLOOR 的节点被标记，比值记为 NaN；统计量只在所有窗口都完整的内部节点上计算。
    """

    ratio: GridField
    flagged: np.ndarray
    interior: np.ndarray

    @property
    def usable(self) -> np.ndarray:
        return self.interior & ~self.flagged

    @property
    def all_flagged(self) -> bool:
        return not self.usable.any()

    def max_ratio(self) -> float:
        if self.all_flagged:
            return float("nan")
        return float(np.max(self.ratio.samples[self.usable]))

    def percentile(self, q: float = 99.0) -> float:
        if self.all_flagged:
            return float("nan")
        return float(np.percentile(self.ratio.samples[self.usable], q))

    def flagged_count(self) -> int:
        return int(self.flagged.sum())


def cotlar_ratio_field(
    k: int,
    f: Integrand,
    n: int,
    half_width: float,
    windows: Optional[WindowSet] = None,
    eps_set: Optional[EpsilonSet] = None,
    workers: Optional[int] = None,
    floor: float = RATIO_FLOOR,
) -> CotlarField:
    """在 N×N 网格上计算 B*_S f 与 M²(B^k f) 的比值场"""
    if k < 1:
        raise DomainError(f"阶数必须为正整数: {k}")
    field = sample(f, n, half_width)
    if windows is None:
        windows = WindowSet.dyadic(field.h, half_width / 4.0)
    if eps_set is None:
        eps_set = EpsilonSet.for_grid(field)

    bstar = bstar_square_grid(k, field, eps_set, workers)
    image = beurling_grid(k, field, workers)
    denominator = iterate_maximal(image, windows, 2).samples
    flagged = denominator < floor
    with np.errstate(divide="ignore", invalid="ignore"):
        ratio = np.where(flagged, np.nan, bstar.samples / np.where(flagged, 1.0, denominator))
    interior = interior_mask(n, 2 * windows.margin(field.h))
    result = CotlarField(GridField(ratio, half_width), flagged, interior)
    logger.info(
        "Cotlar 比值场 %s, k=%d, N=%d: max=%.6g, 标记节点 %d",
        f.label, k, n, result.max_ratio(), result.flagged_count(),
    )
    return result


def gaussian_bump() -> Integrand:
    return Integrand(
        func=lambda w: np.exp(-(w.real ** 2 + w.imag ** 2)),
        decay=FarFieldDecay(exponent=8.0, amplitude=1.0, radius=4.0),
        label="gaussian",
    )


def band_limited_field(seed: int, waves: int = 8, max_frequency: float = 4.0) -> Integrand:
    """随机平面波叠加乘以 Gaussian 包络；同一 seed 给出同一函数"""
    rng = np.random.default_rng(seed)
    radius = max_frequency * np.sqrt(rng.uniform(0.0, 1.0, waves))
    angle = rng.uniform(0.0, 2.0 * math.pi, waves)
    vectors = radius * np.exp(1j * angle)
    amplitudes = (rng.normal(size=waves) + 1j * rng.normal(size=waves)) / math.sqrt(2.0 * waves)

    def func(w):
        w = np.asarray(w, dtype=complex)
        phase = np.zeros(w.shape, dtype=complex)
        for vec, amp in zip(vectors, amplitudes):
            phase = phase + amp * np.exp(1j * (vec.real * w.real + vec.imag * w.imag))
        return phase * np.exp(-0.25 * (w.real ** 2 + w.imag ** 2))

    return Integrand(func=func, decay=FarFieldDecay(exponent=8.0, amplitude=2.0, radius=8.0), label="band_limited")


def cotlar_battery(seed: int) -> Dict[str, Integrand]:
    """Cotlar 检查使用的测试函数组，按名字排序后使用"""
    return {
        "band_limited": band_limited_field(seed),
        "disk": Integrand.indicator(UNIT_DISK, label="disk"),
        "gaussian": gaussian_bump(),
        "shifted_square": Integrand.indicator(Rectangle(0.3 + 0.2j, 1.0), label="shifted_square"),
    }
