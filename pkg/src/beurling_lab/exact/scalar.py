"""π-仿射精确标量

ExactScalar 表示 a + b·π + c·π⁻¹（a, b, c 为有理数）。
加法与有理数缩放在此代数内封闭；乘法不提供（会离开代数），
只提供一个受限的 `divide_by_pi`，用于从 ∫F_j 得到中心值 (−4/π)·∫F_j。
"""

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from ..core.exceptions import DomainError

RationalLike = Union[Fraction, int]


def as_fraction(value: RationalLike) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    raise TypeError(f"只接受精确有理数，得到 {type(value).__name__}")


def format_fraction(value: Fraction) -> str:
    """CSV 约定：有理数写成 "num/den" """
    return f"{value.numerator}/{value.denominator}"


@dataclass(frozen=True)
class ExactScalar:
    """a + b·π + c/π"""

    c_const: Fraction = Fraction(0)
    c_pi: Fraction = Fraction(0)
    c_invpi: Fraction = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, "c_const", as_fraction(self.c_const))
        object.__setattr__(self, "c_pi", as_fraction(self.c_pi))
        object.__setattr__(self, "c_invpi", as_fraction(self.c_invpi))

    @classmethod
    def rational(cls, value: RationalLike) -> "ExactScalar":
        return cls(c_const=as_fraction(value))

    @classmethod
    def pi(cls, coefficient: RationalLike = 1) -> "ExactScalar":
        return cls(c_pi=as_fraction(coefficient))

    def __add__(self, other: "ExactScalar") -> "ExactScalar":
        if not isinstance(other, ExactScalar):
            return NotImplemented
        return ExactScalar(
            self.c_const + other.c_const,
            self.c_pi + other.c_pi,
            self.c_invpi + other.c_invpi,
        )

    def __neg__(self) -> "ExactScalar":
        return ExactScalar(-self.c_const, -self.c_pi, -self.c_invpi)

    def __sub__(self, other: "ExactScalar") -> "ExactScalar":
        if not isinstance(other, ExactScalar):
            return NotImplemented
        return self + (-other)

    def scale(self, factor: RationalLike) -> "ExactScalar":
        """乘以有理数"""
        q = as_fraction(factor)
        return ExactScalar(self.c_const * q, self.c_pi * q, self.c_invpi * q)

    def __mul__(self, other: RationalLike) -> "ExactScalar":
        if isinstance(other, (Fraction, int)) and not isinstance(other, bool):
            return self.scale(other)
        return NotImplemented

    __rmul__ = __mul__

    def divide_by_pi(self) -> "ExactScalar":
        """除以 π；要求 π⁻¹ 分量为零，否则结果含 π⁻²，超出代数"""
        if self.c_invpi != 0:
            raise DomainError("π⁻¹ 分量非零时不能再除以 π")
        return ExactScalar(c_const=self.c_pi, c_pi=Fraction(0), c_invpi=self.c_const)

    def is_zero(self) -> bool:
        # 1, π, π⁻¹ 在 Q 上线性无关，所以零当且仅当三个系数都为零
        return self.c_const == 0 and self.c_pi == 0 and self.c_invpi == 0

    def numeric(self) -> float:
        """浮点求值"""
        return (
            float(self.c_const)
            + float(self.c_pi) * math.pi
            + float(self.c_invpi) / math.pi
        )

    def canonical(self) -> str:
        """规范字符串 "a + b*pi + c/pi"，各系数写成 num/den"""
        return (
            f"{format_fraction(self.c_const)} + {format_fraction(self.c_pi)}*pi"
            f" + {format_fraction(self.c_invpi)}/pi"
        )

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (int, Fraction)):
            other = ExactScalar.rational(other)
        if not isinstance(other, ExactScalar):
            return NotImplemented
        return (self - other).is_zero()

    def __hash__(self) -> int:
        return hash((self.c_const, self.c_pi, self.c_invpi))

    def __str__(self) -> str:
        return self.canonical()

    def __repr__(self) -> str:
        return f"ExactScalar({self.canonical()})"


ZERO = ExactScalar()
