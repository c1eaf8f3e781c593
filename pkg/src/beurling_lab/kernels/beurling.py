"""迭代 Beurling 变换的核与 Fourier 乘子

B^k 的核为 b_k(z) = ((-1)^k k/π)·z̄^{k-1}/z^{k+1}，逆算子 (B^k)^{-1} 的核是它的复共轭。
两者都是 -2 次齐次、在单位圆上均值为零的函数。

求值一律走极坐标：z̄^{k-1}/z^{k+1} = e^{-2ikθ}/r²，因此 k 取到 16 甚至更大也不会溢出。
所有函数既接受标量也接受 numpy 复数组（逐元素）。
"""

import math
from typing import Literal, Union

import numpy as np
from pydantic import BaseModel, Field

from ..core.exceptions import DomainError

ArrayLike = Union[complex, float, np.ndarray]

Direction = Literal["forward", "inverse"]


class KernelSpec(BaseModel):
    """核的选择：迭代阶数 k 与方向（正向 b_k / 逆向 conj(b_k)）"""

    model_config = {"frozen": True}

    order: int = Field(ge=1, description="迭代阶数 k ≥ 1")
    direction: Direction = "forward"

    @property
    def constant(self) -> float:
        """归一化常数 (-1)^k k/π"""
        return (-1) ** self.order * self.order / math.pi

    def inverse(self) -> "KernelSpec":
        """返回相反方向的核"""
        other: Direction = "inverse" if self.direction == "forward" else "forward"
        return KernelSpec(order=self.order, direction=other)

    def __str__(self) -> str:
        return f"b_{self.order}({self.direction})"


def _as_spec(spec: Union[KernelSpec, int]) -> KernelSpec:
    if isinstance(spec, KernelSpec):
        return spec
    return KernelSpec(order=int(spec))


def _phase_and_modulus(z: np.ndarray):
    r2 = z.real * z.real + z.imag * z.imag
    theta = np.arctan2(z.imag, z.real)
    return r2, theta


def eval_kernel(spec: Union[KernelSpec, int], z: ArrayLike) -> ArrayLike:
    """计算 b_k(z)（forward）或 conj(b_k(z))（inverse）

    Args:
        spec: KernelSpec，或直接给出阶数 k（视为 forward）
        z: 复数或复数组，不能为 0

    Raises:
        DomainError: 在奇点 z = 0 处求值
    """
    spec = _as_spec(spec)
    scalar = np.isscalar(z)
    arr = np.asarray(z, dtype=complex)
    if np.any(arr == 0):
        raise DomainError("核在 z = 0 处奇异")
    r2, theta = _phase_and_modulus(arr)
    sign = -1.0 if spec.direction == "forward" else 1.0
    # k 很大时先把角度约化到 [-π, π)，避免 2kθ 的舍入误差累积
    phase = np.mod(sign * 2 * spec.order * theta + math.pi, 2 * math.pi) - math.pi
    values = spec.constant * np.exp(1j * phase) / r2
    return complex(values) if scalar else values


def eval_multiplier(k: int, xi: ArrayLike) -> ArrayLike:
    """Fourier 乘子 (ξ̄/ξ)^k，单位模；ξ = 0 处按约定取 0"""
    if k < 1:
        raise DomainError(f"阶数必须为正整数: {k}")
    scalar = np.isscalar(xi)
    arr = np.asarray(xi, dtype=complex)
    theta = np.arctan2(arr.imag, arr.real)
    phase = np.mod(-2 * k * theta + math.pi, 2 * math.pi) - math.pi
    values = np.where(arr == 0, 0.0 + 0.0j, np.exp(1j * phase))
    return complex(values) if scalar else values


def inverse_multiplier(k: int, xi: ArrayLike) -> ArrayLike:
    """逆算子的乘子 (ξ/ξ̄)^k，ξ = 0 处取 0"""
    values = eval_multiplier(k, xi)
    return np.conj(values) if not np.isscalar(values) else complex(values).conjugate()


def circle_mean(spec: Union[KernelSpec, int], radius: float, samples: int) -> complex:
    """核在半径为 radius 的圆周上的梯形平均，应在求积精度内为零（抵消性质）"""
    spec = _as_spec(spec)
    if radius <= 0:
        raise DomainError(f"半径必须为正: {radius}")
    if samples < 8 * spec.order:
        raise DomainError(f"采样点数至少为 8k = {8 * spec.order}，实际 {samples}")
    angles = 2 * math.pi * np.arange(samples) / samples
    points = radius * np.exp(1j * angles)
    return complex(np.mean(eval_kernel(spec, points)))
