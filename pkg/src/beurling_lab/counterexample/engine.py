"""k = 1 的反例与偶数 k 的扇形函数

反例：f = B⁻¹(χ_{Q₀})，沿 z = α(1+i) 计算正方形截断 T^{2(α+m)}_Q f(z)，
与 M(χ_{Q₀})(z) = 1/(α+1)² 比较，比值随 log|z| 增长。

扇形函数：G_R = χ{3 < |z| < R, cos(2kθ) > ½}，∫ z^{k−1}/z̄^{k+1}·G_R 随 log R 无界增长，
而 M^j G_R(0) ≤ 1 对任意 j 成立。
"""

import logging
import math
from dataclasses import dataclass
from typing import Optional, Sequence, Tuple

import numpy as np
from pydantic import BaseModel, Field, model_validator

from ..core.config import QuadratureConfig
from ..core.exceptions import DomainError
from ..maximal.hardy_littlewood import iterated_square_indicator, square_indicator_maximal
from ..quadrature.farfield import inverse_square_integrand, reflected_integrand, tail_correction
from ..quadrature.integrand import Integrand
from ..quadrature.operators import integrate_with_error, trunc_square_with_error
from ..quadrature.regions import AnnularSector, Region, Union
from ..quadrature.rules import QuadratureResult

logger = logging.getLogger(__name__)

# 相对精度以该模长处的 abs_tol 为基准，更远的点按 |z|^{-2} 收紧
REFERENCE_MODULUS = 8.0 * math.sqrt(2.0)
SECTOR_INNER_RADIUS = 3.0


class CounterexamplePoint(BaseModel):
    """反例中的一个点 z = α + iα，截断边长 ε = 2(α+m)"""

    model_config = {"frozen": True}

    alpha: float = Field(gt=2.0, description="对角线参数 α")
    m: float = Field(default=5.0, gt=0.0, description="截断偏移 m")

    @model_validator(mode="after")
    def _warn_small_alpha(self) -> "CounterexamplePoint":
        if self.alpha < 4.0 * self.m:
            logger.warning("α=%.6g < 4m=%.6g，远离 α ≫ m 的区域，结果只作参考", self.alpha, 4.0 * self.m)
        return self

    @property
    def z(self) -> complex:
        return complex(self.alpha, self.alpha)

    @property
    def eps(self) -> float:
        return 2.0 * (self.alpha + self.m)

    @property
    def modulus(self) -> float:
        return abs(self.z)


def point_config(pt: CounterexamplePoint, cfg: QuadratureConfig) -> QuadratureConfig:
    """按 |z|^{-2} 收紧绝对容差，使各点的相对精度一致"""
    factor = min(1.0, (REFERENCE_MODULUS / pt.modulus) ** 2)
    return cfg.with_tolerance(cfg.abs_tol * factor)


def counterexample_value_with_error(
    pt: CounterexamplePoint,
    cfg: Optional[QuadratureConfig] = None,
    outer_factor: Optional[float] = None,
    reflected: bool = False,
) -> QuadratureResult:
    """T^{2(α+m)}_Q f(z)，外截断半径 outer_factor·|z|，并加上解析尾项 4/(πR²)

    reflected=True 时改用 f̃(w) = conj(f(w̄)) 并在 z̄ 处求值。
    """
    cfg = point_config(pt, cfg or QuadratureConfig())
    factor = cfg.outer_radius_factor if outer_factor is None else outer_factor
    f = inverse_square_integrand()
    z = pt.z
    if reflected:
        f = reflected_integrand(f)
        z = z.conjugate()
    radius = factor * abs(z)
    body = trunc_square_with_error(1, f, z, pt.eps, cfg, outer_radius=radius)
    tail = tail_correction(radius, z)
    logger.debug("反例 α=%.6g: 主体 %s, 尾项 %.6g, 误差 %.3e", pt.alpha, body.value, tail, body.error)
    return QuadratureResult(body.value + tail, body.error, body.panels, body.evaluations)


def counterexample_value(pt: CounterexamplePoint, cfg: Optional[QuadratureConfig] = None) -> complex:
    return counterexample_value_with_error(pt, cfg).value


def counterexample_ratio(
    pt: CounterexamplePoint,
    cfg: Optional[QuadratureConfig] = None,
    reflected: bool = False,
) -> float:
    """|T^{2(α+m)}_Q f(z)| / M(χ_{Q₀})(z)，分母用闭式"""
    value = counterexample_value_with_error(pt, cfg, reflected=reflected).value
    z = pt.z.conjugate() if reflected else pt.z
    return abs(value) / square_indicator_maximal(z)


def counterexample_ratio_m2(pt: CounterexamplePoint, cfg: Optional[QuadratureConfig] = None) -> float:
    """分母换成 M²(χ_{Q₀})(z) 后的比值，沿 α 应保持有界"""
    return abs(counterexample_value(pt, cfg)) / iterated_square_indicator(pt.z)


class SectorFunction(BaseModel):
    """G_R = χ{3 < |z| < R, cos(2kθ) > ½}"""

    model_config = {"frozen": True}

    k: int = Field(ge=2, description="偶数阶")
    outer_radius: float = Field(gt=SECTOR_INNER_RADIUS, description="外半径 R")

    @model_validator(mode="after")
    def _check_even(self) -> "SectorFunction":
        if self.k % 2:
            raise ValueError(f"扇形函数只对偶数 k 构造，得到 k={self.k}")
        return self

    @property
    def inner_radius(self) -> float:
        return SECTOR_INNER_RADIUS

    def sectors(self) -> Tuple[AnnularSector, ...]:
        """2k 个张角 π/(3k) 的环扇形，中心角 mπ/k"""
        half = math.pi / (6.0 * self.k)
        return tuple(
            AnnularSector(0j, self.inner_radius, self.outer_radius, c - half, c + half)
            for c in (m * math.pi / self.k for m in range(2 * self.k))
        )

    def region(self) -> Region:
        return Union(self.sectors())

    def __call__(self, w) -> np.ndarray:
        w = np.asarray(w, dtype=complex)
        r = np.abs(w)
        theta = np.angle(w)
        inside = (r > self.inner_radius) & (r < self.outer_radius) & (np.cos(2 * self.k * theta) > 0.5)
        return inside.astype(float)

    def reference_integral(self) -> float:
        """k = 2 等偶数阶的闭式：∫∫ cos(2kθ)·χ{cos 2kθ > ½} dθ dr/r = √3·log(R/3)"""
        return math.sqrt(3.0) * math.log(self.outer_radius / self.inner_radius)


@dataclass(frozen=True)
class SectorIntegral:
    """扇形积分的数值、求积误差估计与 M^j G(0) 的上界"""

    value: complex
    error: float
    iterations: int
    bound: float = 1.0

    @property
    def quotient(self) -> float:
        return self.value.real / self.bound


def theorem_b_integral_with_error(
    g: SectorFunction,
    j_max: int = 1,
    cfg: Optional[QuadratureConfig] = None,
) -> SectorIntegral:
    """被积函数在极坐标下为 e^{2ikθ}/r²

    0 ≤ G ≤ 1 且 M 保持 [0, 1] 取值，所以对 j = 1..j_max 的每个迭代 M^j G(0) ≤ 1。
    """
    if j_max < 1:
        raise DomainError(f"迭代次数必须为正整数: {j_max}")
    k = g.k
    kernel = Integrand(
        func=lambda w: w ** (k - 1) / np.conj(w) ** (k + 1),
        singular_point=0j,
        label=f"z^{k - 1}/conj(z)^{k + 1}",
    )
    result = integrate_with_error(kernel, g.region(), cfg)
    logger.debug("扇形积分 k=%d R=%.6g: %s (误差 %.3e)", k, g.outer_radius, result.value, result.error)
    return SectorIntegral(result.value, result.error, j_max)


def theorem_b_integral(
    g: SectorFunction,
    j_max: int = 1,
    cfg: Optional[QuadratureConfig] = None,
) -> Tuple[complex, float]:
    """(∫_{|z|>3} z^{k−1}/z̄^{k+1}·G(z) dA, M^j G(0) 的上界)"""
    integral = theorem_b_integral_with_error(g, j_max, cfg)
    return integral.value, integral.bound


@dataclass(frozen=True)
class LinearFit:
    """最小二乘直线 y = slope·x + intercept 及决定系数"""

    slope: float
    intercept: float
    r_squared: float


def linear_fit(xs: Sequence[float], ys: Sequence[float]) -> LinearFit:
    x = np.asarray(xs, dtype=float)
    y = np.asarray(ys, dtype=float)
    if x.size < 2 or x.size != y.size:
        raise DomainError("线性拟合至少需要两个成对的点")
    slope, intercept = np.polyfit(x, y, 1)
    predicted = slope * x + intercept
    residual = float(np.sum((y - predicted) ** 2))
    total = float(np.sum((y - y.mean()) ** 2))
    r_squared = 1.0 - residual / total if total > 0 else 1.0
    return LinearFit(float(slope), float(intercept), r_squared)
