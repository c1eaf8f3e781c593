"""主值积分与截断变换"""

import logging
import math
from typing import Literal, Optional

import numpy as np

from ..core.config import QuadratureConfig
from ..core.exceptions import DomainError
from ..exact import center_value
from ..kernels import KernelSpec, eval_kernel
from .integrand import Integrand
from .regions import Difference, Disk, Intersection, Rectangle, Region, UNIT_SQUARE
from .rules import QuadratureResult, box_integrate, polar_integrate

logger = logging.getLogger(__name__)

_DEFAULT_CONFIG = QuadratureConfig()


def _cfg(cfg: Optional[QuadratureConfig]) -> QuadratureConfig:
    return _DEFAULT_CONFIG if cfg is None else cfg


def integrate_with_error(
    f: Integrand,
    region: Region,
    cfg: Optional[QuadratureConfig] = None,
    abs_tol: Optional[float] = None,
) -> QuadratureResult:
    """在 region 上积分 f，返回数值与误差估计

    f 的支撑会先与 region 求交；声明了 interface 时按界面两侧分别积分。
    声明了奇点时以奇点为极点，否则以区域锚点为极点；无奇点的矩形走张量四叉树。
    """
    cfg = _cfg(cfg)
    tol = cfg.abs_tol if abs_tol is None else abs_tol
    if f.support is not None:
        region = Intersection([region, f.support])
    if f.interface is not None:
        inside = Intersection([region, f.interface])
        outside = Difference(region, f.interface)
        plain = Integrand(f.func, f.singular_point, f.decay, None, None, f.label)
        return integrate_with_error(plain, inside, cfg, tol / 2) + integrate_with_error(
            plain, outside, cfg, tol / 2
        )
    if f.singular_point is None and isinstance(region, Rectangle):
        return box_integrate(f.raw, region, tol, order=cfg.base_rule_order, max_level=min(cfg.max_depth, 14))
    if f.singular_point is not None:
        pole, singular = complex(f.singular_point), True
    else:
        pole, singular = region.anchor(), False
    return polar_integrate(f.raw, region, pole, cfg, singular=singular, abs_tol=tol)


def integrate(f: Integrand, region: Region, cfg: Optional[QuadratureConfig] = None) -> complex:
    """∫_region f dA，估计误差不超过 cfg.abs_tol

    Raises:
        ConvergenceError: 达到最大深度仍未满足容差
    """
    return integrate_with_error(f, region, cfg).value


def pv_delta(cfg: QuadratureConfig) -> float:
    """主值分裂中小正方形的边长 δ = min(1, tol^{1/4})"""
    return min(1.0, cfg.abs_tol ** 0.25)


def pv_integral_with_error(k: int, g: Integrand, cfg: Optional[QuadratureConfig] = None) -> QuadratureResult:
    cfg = _cfg(cfg)
    if k < 1:
        raise DomainError(f"阶数必须为正整数: {k}")
    delta = pv_delta(cfg)
    small = Rectangle.square(0j, delta)
    g0 = complex(g.raw(np.zeros(1, dtype=complex))[0])

    outer = Integrand(lambda w: eval_kernel(k, w) * g.raw(w), singular_point=0j, label="b_k*g")
    near = Integrand(lambda w: eval_kernel(k, w) * (g.raw(w) - g0), singular_point=0j, label="b_k*(g-g0)")
    first = integrate_with_error(outer, Difference(UNIT_SQUARE, small), cfg, cfg.abs_tol / 2)
    second = integrate_with_error(near, small, cfg, cfg.abs_tol / 2)
    constant = g0 * center_value(k).numeric()
    logger.debug("pv_integral k=%d: 外部 %s, 近场 %s, 常数项 %s", k, first.value, second.value, constant)
    return QuadratureResult(
        first.value + second.value + constant,
        first.error + second.error,
        first.panels + second.panels,
        first.evaluations + second.evaluations,
    )


def pv_integral(k: int, g: Integrand, cfg: Optional[QuadratureConfig] = None) -> complex:
    """p.v. ∫_{Q₀} b_k(w) g(w) dw

    分裂为 ∫_{Q₀∖Q(0,δ)} b_k g + ∫_{Q(0,δ)} b_k (g − g(0)) + g(0)·center_value(k)，
    前两项绝对收敛，第三项来自精确算术。
    """
    return pv_integral_with_error(k, g, cfg).value


def outer_radius_for(k: int, f: Integrand, z: complex, tol: float) -> float:
    """由衰减提示选择外截断半径，使 |w| > R 部分的贡献不超过 tol/2

    |w| ≥ 2|z| 时 |z − w| ≥ |w|/2，因此尾部 ≤ 2·A·k·2^p / (p·R^p)。
    """
    if f.decay is None:
        raise DomainError("无界支撑的被积函数缺少衰减提示")
    p, amp = f.decay.exponent, f.decay.amplitude
    base = 2.0 * abs(z) + 2.0 * f.decay.radius + 1.0
    if amp == 0:
        return base
    needed = (4.0 * amp * k * 2.0 ** p / (p * tol)) ** (1.0 / p)
    return max(base, needed)


def _shifted_product(k: int, f: Integrand, z: complex) -> Integrand:
    """w ↦ f(z − w)·b_k(w)"""
    return Integrand(
        func=lambda w: f.raw(z - w) * eval_kernel(k, w),
        singular_point=0j,
        interface=None if f.interface is None else f.interface.reflected(z),
        label=f"{f.label}(z-w)b_{k}(w)",
    )


def _truncated(
    k: int,
    f: Integrand,
    z: complex,
    exclusion: Region,
    cfg: QuadratureConfig,
    outer_radius: Optional[float] = None,
) -> QuadratureResult:
    z = complex(z)
    product = _shifted_product(k, f, z)
    if f.support is not None:
        domain: Region = f.support.reflected(z)
        tol = cfg.abs_tol
    elif f.decay is not None or outer_radius is not None:
        radius = outer_radius if outer_radius is not None else outer_radius_for(k, f, z, cfg.abs_tol)
        domain = Disk(0j, radius)
        tol = cfg.abs_tol / 2
    else:
        raise DomainError("被积函数既没有有界支撑也没有衰减提示，无法截断外部区域")
    return integrate_with_error(product, Difference(domain, exclusion), cfg, tol)


def trunc_disk(
    k: int,
    f: Integrand,
    z: complex,
    eps: float,
    cfg: Optional[QuadratureConfig] = None,
    outer_radius: Optional[float] = None,
) -> complex:
    """∫_{|w|>ε} f(z−w)·b_k(w) dw"""
    if eps <= 0:
        raise DomainError(f"截断半径必须为正: {eps}")
    return _truncated(k, f, z, Disk(0j, eps), _cfg(cfg), outer_radius).value


def trunc_square(
    k: int,
    f: Integrand,
    z: complex,
    eps: float,
    cfg: Optional[QuadratureConfig] = None,
    outer_radius: Optional[float] = None,
) -> complex:
    """∫_{w∉Q(0,ε)} f(z−w)·b_k(w) dw，Q(0,ε) 是边长 ε 的中心正方形"""
    if eps <= 0:
        raise DomainError(f"截断边长必须为正: {eps}")
    return _truncated(k, f, z, Rectangle.square(0j, eps), _cfg(cfg), outer_radius).value


def trunc_square_with_error(
    k: int,
    f: Integrand,
    z: complex,
    eps: float,
    cfg: Optional[QuadratureConfig] = None,
    outer_radius: Optional[float] = None,
) -> QuadratureResult:
    if eps <= 0:
        raise DomainError(f"截断边长必须为正: {eps}")
    return _truncated(k, f, z, Rectangle.square(0j, eps), _cfg(cfg), outer_radius)


def _band_integral(k: int, f: Integrand, z: complex, band: Region, cfg: QuadratureConfig) -> complex:
    """∫_band f(z−w)·b_k(w) dw，band 有界"""
    product = _shifted_product(k, f, z)
    if f.support is not None:
        band = Intersection([band, f.support.reflected(z)])
    return integrate_with_error(product, band, cfg).value


def geometric_split_residual(
    k: int,
    f: Integrand,
    z: complex,
    eps: float,
    cfg: Optional[QuadratureConfig] = None,
    direction: Literal["square", "disk"] = "square",
) -> float:
    """两种截断之间几何换算恒等式的残差

    direction="square"：T^ε_Q f = T^{√2ε/2} f + ∫_{B(0,√2ε/2)∖Q(0,ε)} f(z−w)b_k(w)dw
    direction="disk"：  T^ε f = T^{2ε}_Q f + ∫_{Q(0,2ε)∖B(0,ε)} f(z−w)b_k(w)dw
    """
    cfg = _cfg(cfg)
    z = complex(z)
    if eps <= 0:
        raise DomainError(f"截断参数必须为正: {eps}")
    if direction == "square":
        radius = math.sqrt(2.0) * eps / 2.0
        square = Rectangle.square(0j, eps)
        lhs = trunc_square(k, f, z, eps, cfg)
        disk_part = trunc_disk(k, f, z, radius, cfg)
        band = _band_integral(k, f, z, Difference(Disk(0j, radius), square), cfg)
        return abs(lhs - disk_part - band)
    if direction == "disk":
        square = Rectangle.square(0j, 2.0 * eps)
        lhs = trunc_disk(k, f, z, eps, cfg)
        square_part = trunc_square(k, f, z, 2.0 * eps, cfg)
        band = _band_integral(k, f, z, Difference(square, Disk(0j, eps)), cfg)
        return abs(lhs - square_part - band)
    raise DomainError(f"未知的换算方向: {direction}")


def ak_tail_with_error(k: int, z: complex, cfg: Optional[QuadratureConfig] = None) -> QuadratureResult:
    z = complex(z)
    if abs(z) <= 3.0:
        raise DomainError(f"ak_tail 只在 |z| > 3 时有定义，得到 |z| = {abs(z)}")
    inverse = KernelSpec(order=k, direction="inverse")
    g = Integrand(lambda w: eval_kernel(inverse, z - w), label=f"conj(b_{k}(z-w))")
    return pv_integral_with_error(k, g, cfg)


def ak_tail(k: int, z: complex, cfg: Optional[QuadratureConfig] = None) -> complex:
    """h_k(z) = p.v. ∫_{Q₀} conj(b_k(z−w))·b_k(w) dw；z ≠ 0 时 a_k(z) = −h_k(z)"""
    return ak_tail_with_error(k, z, cfg).value
