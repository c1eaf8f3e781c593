"""被积函数描述"""

from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np

from .regions import Region

ComplexFunction = Callable[[np.ndarray], np.ndarray]


@dataclass(frozen=True)
class FarFieldDecay:
    """远场衰减提示：|f(w)| ≤ amplitude·|w|^{-exponent}，对 |w| ≥ radius 成立"""

    exponent: float
    amplitude: float = 1.0
    radius: float = 0.0

    def __post_init__(self):
        if self.exponent <= 0:
            raise ValueError("衰减指数必须为正")
        if self.amplitude < 0 or self.radius < 0:
            raise ValueError("衰减幅度与半径必须非负")


@dataclass(frozen=True)
class Integrand:
    """可求值的复函数及其几何信息

    Attributes:
        func: 向量化函数，输入复数组，输出同形状复数组
        singular_point: 声明的奇点（极坐标求积以它为极点）
        decay: 远场衰减提示；支撑无界时截断外半径由它确定
        support: 支撑区域；给出时 func 只在支撑内有意义，支撑外视为 0
        interface: 函数在该区域边界两侧各自光滑（跨边界可以有跳跃）
        label: 日志与 CSV 中使用的名字
    """

    func: ComplexFunction
    singular_point: Optional[complex] = None
    decay: Optional[FarFieldDecay] = None
    support: Optional[Region] = None
    interface: Optional[Region] = None
    label: str = field(default="f")

    def raw(self, w) -> np.ndarray:
        """不做支撑屏蔽的求值（求积器在支撑内部调用）"""
        w = np.asarray(w, dtype=complex)
        values = np.asarray(self.func(w), dtype=complex)
        return np.broadcast_to(values, w.shape)

    def __call__(self, w) -> np.ndarray:
        values = self.raw(w)
        if self.support is None:
            return values
        return np.where(self.support.contains(w), values, 0.0 + 0.0j)

    @classmethod
    def constant(cls, value: complex = 1.0, label: str = "const") -> "Integrand":
        return cls(func=lambda w: np.full(np.shape(w), value, dtype=complex), label=label)

    @classmethod
    def indicator(cls, region: Region, label: str = "chi") -> "Integrand":
        """区域的特征函数：支撑内恒为 1"""
        return cls(
            func=lambda w: np.ones(np.shape(w), dtype=complex),
            support=region,
            label=label,
        )
