"""f = B⁻¹(χ_{Q₀}) 的求值

远场（|w| ≥ 4）用 Q₀ 的精确矩展开：
    f(w) = −(1/π)·Σ_{n≥0} (n+1)·μ_n·w̄^{−(n+2)}，μ_n = ∫_{Q₀} ξ̄ⁿ dA
近场用矩形核积分的闭式原函数 G_R(w) = ∫_R (w−ξ)^{−2} dA(ξ)：
    f(w) = −(1/π)·conj(G_{Q₀}(w))，B(χ_{Q₀})(w) = −(1/π)·G_{Q₀}(w)
点落在矩形内部时取中心正方形主值（该主值为零），其余部分拆成四个矩形。
"""

import logging
import math
from functools import lru_cache

import numpy as np

from ..core.exceptions import DomainError
from ..exact import square_moment
from .integrand import FarFieldDecay, Integrand
from .regions import Disk, Rectangle, UNIT_SQUARE

logger = logging.getLogger(__name__)

# 远场 / 近场的分界半径
SEAM_RADIUS = 4.0
# 远场级数的收敛域下界 2√2
MIN_SERIES_RADIUS = 2.0 * math.sqrt(2.0)
MAX_TERMS = 400


@lru_cache(maxsize=None)
def _moment_table(terms: int) -> np.ndarray:
    """(n+1)·μ_n，n = 0..terms−1，转为浮点"""
    return np.array([(n + 1) * float(square_moment(n)) for n in range(terms)])


def far_field_error_bound(w, terms: int) -> np.ndarray:
    """截断 terms 项后的余项上界

    |μ_n| ≤ 4·(√2)ⁿ，记 q = √2/|w|，余项 ≤ (4/(π|w|²))·q^N((N+1) − Nq)/(1−q)²。
    """
    r = np.abs(np.asarray(w, dtype=complex))
    q = math.sqrt(2.0) / r
    n = terms
    return 4.0 / (math.pi * r * r) * q ** n * ((n + 1) - n * q) / (1.0 - q) ** 2


def terms_for(min_radius: float, tol: float = 1e-17) -> int:
    """让余项上界低于 tol 所需的项数"""
    if min_radius < MIN_SERIES_RADIUS:
        raise DomainError(f"远场级数要求 |w| ≥ 2√2，得到 {min_radius}")
    for n in range(4, MAX_TERMS, 4):
        if float(far_field_error_bound(min_radius, n)) <= tol:
            return n
    return MAX_TERMS


def far_field_f(w, terms: int):
    """用前 terms 项矩展开计算 f(w)

    Raises:
        DomainError: |w| < 2√2 或 terms < 1
    """
    if terms < 1:
        raise DomainError(f"项数至少为 1，得到 {terms}")
    scalar = np.isscalar(w)
    arr = np.asarray(w, dtype=complex)
    if np.any(np.abs(arr) < MIN_SERIES_RADIUS):
        raise DomainError("远场级数在 |w| < 2√2 处发散")
    coeffs = _moment_table(terms)
    inv = 1.0 / np.conj(arr)
    power = inv * inv
    total = np.zeros_like(arr)
    # μ_n 只在 n ≡ 0 (mod 4) 时非零
    step = inv ** 4
    for n in range(0, terms, 4):
        total = total + coeffs[n] * power
        power = power * step
    values = -total / math.pi
    return complex(values) if scalar else values


def _log_ratio(num: np.ndarray, den: np.ndarray) -> np.ndarray:
    return np.log(num / den)


def _rect_primitive(w, x1, x2, y1, y2) -> np.ndarray:
    """w 不在矩形竖边上时 ∫_R (w−ξ)^{−2} dA 的闭式"""
    a = _log_ratio(w - x2 - 1j * y2, w - x2 - 1j * y1)
    b = _log_ratio(w - x1 - 1j * y2, w - x1 - 1j * y1)
    return 1j * (a - b)


def rectangle_kernel_integral(w, rect: Rectangle = UNIT_SQUARE):
    """G_R(w) = ∫_R (w−ξ)^{−2} dA(ξ)，w 在 R 内部时取中心正方形主值"""
    scalar = np.isscalar(w)
    arr = np.atleast_1d(np.asarray(w, dtype=complex))
    x1, x2, y1, y2 = rect.bounds
    out = np.empty_like(arr)

    dist = np.minimum.reduce([arr.real - x1, x2 - arr.real, arr.imag - y1, y2 - arr.imag])
    inside = dist > 0
    outside = ~inside
    if outside.any():
        out[outside] = _rect_primitive(arr[outside], x1, x2, y1, y2)
    if inside.any():
        p = arr[inside]
        eps = 0.5 * dist[inside]
        px, py = p.real, p.imag
        # R ∖ Q(p, 2ε) = 左条 + 右条 + 下块 + 上块
        total = _rect_primitive(p, x1, px - eps, y1, y2)
        total = total + _rect_primitive(p, px + eps, x2, y1, y2)
        total = total + _rect_primitive(p, px - eps, px + eps, y1, py - eps)
        total = total + _rect_primitive(p, px - eps, px + eps, py + eps, y2)
        out[inside] = total
    return complex(out[0]) if scalar else out.reshape(np.shape(w))


def square_transform(k: int, z):
    """B^k(χ_{Q₀})(z) 的闭式，目前只支持 k = 1：B(χ_{Q₀}) = −(1/π)·G_{Q₀}"""
    if k != 1:
        raise DomainError(f"square_transform 只有 k = 1 的闭式，得到 k = {k}")
    values = rectangle_kernel_integral(z, UNIT_SQUARE)
    return -values / math.pi


def near_field_f(w):
    """f(w) = −(1/π)·conj(G_{Q₀}(w))，对所有 w 有效（Q₀ 边界除外）"""
    return -np.conj(rectangle_kernel_integral(w, UNIT_SQUARE)) / math.pi


def inverse_square_f(w, terms: int = 0):
    """f = B⁻¹(χ_{Q₀})：|w| ≥ 4 用矩展开，其余用闭式；terms=0 表示按最小模自动选项数"""
    scalar = np.isscalar(w)
    arr = np.atleast_1d(np.asarray(w, dtype=complex))
    out = np.empty_like(arr)
    far = np.abs(arr) >= SEAM_RADIUS
    if far.any():
        n = terms or terms_for(float(np.abs(arr[far]).min()))
        out[far] = far_field_f(arr[far], n)
    if (~far).any():
        out[~far] = near_field_f(arr[~far])
    return complex(out[0]) if scalar else out.reshape(np.shape(w))


def inverse_square_decay() -> FarFieldDecay:
    """|f(w)| ≤ 4/(π|w|²(1−q)²)，q = √2/4，对 |w| ≥ 4 成立"""
    q = math.sqrt(2.0) / SEAM_RADIUS
    return FarFieldDecay(exponent=2.0, amplitude=4.0 / (math.pi * (1.0 - q) ** 2), radius=SEAM_RADIUS)


def inverse_square_integrand() -> Integrand:
    """f = B⁻¹(χ_{Q₀}) 作为 Integrand：跨 ∂Q₀ 有跳跃，远场按 |w|^{-2} 衰减"""
    return Integrand(
        func=inverse_square_f,
        decay=inverse_square_decay(),
        interface=UNIT_SQUARE,
        label="Binv_chiQ0",
    )


def reflected_integrand(f: Integrand) -> Integrand:
    """f̃(w) = conj(f(w̄))"""
    return Integrand(
        func=lambda w: np.conj(f.raw(np.conj(w))),
        singular_point=None if f.singular_point is None else complex(f.singular_point).conjugate(),
        decay=f.decay,
        support=None if f.support is None else _conj_region(f.support),
        interface=None if f.interface is None else _conj_region(f.interface),
        label=f"conj({f.label})",
    )


def _conj_region(region):
    if isinstance(region, Rectangle):
        return Rectangle(region.center.conjugate(), region.half_width, region.half_height)
    if isinstance(region, Disk):
        return Disk(region.center.conjugate(), region.radius)
    raise DomainError(f"不支持对 {type(region).__name__} 做共轭反射")


def tail_correction(outer_radius: float, z: complex) -> float:
    """k = 1 时 |w| > R 部分对 T_Q(f)(z) 的贡献

    把 f(z−w) 按 z̄/w̄ 与矩同时展开，除 −(4/π)·w̄^{−2} 外每一项乘上 b_1(w) 后角向平均为零，
    因此只要 R ≥ |z| + 2√2，尾部恰为 4/(πR²)。
    """
    if outer_radius < abs(z) + MIN_SERIES_RADIUS:
        raise DomainError("外半径太小，尾部展开不收敛")
    return 4.0 / (math.pi * outer_radius ** 2)
