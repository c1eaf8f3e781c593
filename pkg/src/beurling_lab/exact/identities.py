"""中心值与求和恒等式的精确计算

本模块只用 `fractions.Fraction` 与 Python 大整数，不做任何浮点运算：

- int_I(d, n)     = ∫₀¹ x^{2n}/(x²+1)^d dx，用分部积分递推降到 I(1,0) = π/4
- fj_integral(j)  = ∫₀¹ F_j，形如 q_j − π/4
- center_value(k) = B^k(χ_{Q₀})(0)：k 奇数为 0，k = 2j 时为 1 − 4q_j/π
- sum_S / suma_lhs / telescope_step：求和恒等式及其逐步改写
- square_moment(n) = ∫_{Q₀} ξ̄ⁿ dA，用于 B⁻¹(χ_{Q₀}) 的远场展开
"""

from fractions import Fraction
from functools import lru_cache
from math import comb, factorial

from pydantic import BaseModel, Field, model_validator

from ..core.exceptions import DomainError
from .scalar import ExactScalar


class IntegralKey(BaseModel):
    """I(d, 2n) 的索引，要求 0 ≤ n < d"""

    model_config = {"frozen": True}

    d: int = Field(ge=1)
    n: int = Field(ge=0)

    @model_validator(mode="after")
    def _check_order(self) -> "IntegralKey":
        if self.n >= self.d:
            raise ValueError(f"需要 n < d，得到 d={self.d}, n={self.n}")
        return self


def _key(d: int, n: int) -> IntegralKey:
    try:
        return IntegralKey(d=d, n=n)
    except ValueError as exc:
        raise DomainError(str(exc)) from exc


def boundary_term(d: int) -> Fraction:
    """分部积分在 [0,1] 上的边界项 −1/(2(d−1)·2^{d−1})（n ≥ 1 时 x=0 端为零）"""
    if d < 2:
        raise DomainError(f"边界项需要 d ≥ 2，得到 {d}")
    return Fraction(-1, 2 * (d - 1) * 2 ** (d - 1))


@lru_cache(maxsize=None)
def _int_I(d: int, n: int) -> ExactScalar:
    if n == 0:
        if d == 1:
            # arctan(1)
            return ExactScalar.pi(Fraction(1, 4))
        # I(d,0) = x/(2(d−1)(x²+1)^{d−1}) |₀¹ + (2d−3)/(2(d−1))·I(d−1,0)
        head = ExactScalar.rational(Fraction(1, 2 * (d - 1) * 2 ** (d - 1)))
        return head + _int_I(d - 1, 0).scale(Fraction(2 * d - 3, 2 * (d - 1)))
    # I(d,2n) = −x^{2n−1}/(2(d−1)(x²+1)^{d−1}) |₀¹ + (2n−1)/(2(d−1))·I(d−1,2(n−1))
    head = ExactScalar.rational(boundary_term(d))
    return head + _int_I(d - 1, n - 1).scale(Fraction(2 * n - 1, 2 * (d - 1)))


def int_I(key) -> ExactScalar:
    """∫₀¹ x^{2n}/(x²+1)^d dx 的精确值

    Args:
        key: IntegralKey，或 (d, n) 二元组
    """
    if not isinstance(key, IntegralKey):
        d, n = key
        key = _key(int(d), int(n))
    return _int_I(key.d, key.n)


def ide1_coefficient(d: int, n: int) -> Fraction:
    """把 I(d,2n) 降到 I(d−n,0) 时累计的系数

    (2n−1)!/(2^{n−1}(n−1)!) · (d−n−1)!/(2^n (d−1)!)；n = 0 时为 1。
    """
    _key(d, n)
    if n == 0:
        return Fraction(1)
    return Fraction(factorial(2 * n - 1), 2 ** (n - 1) * factorial(n - 1)) * Fraction(
        factorial(d - n - 1), 2 ** n * factorial(d - 1)
    )


def ide2_coefficient(k: int) -> Fraction:
    """把 I(k,0) 降到 I(1,0) 时累计的系数 (2k−3)!/(2^{2k−3}(k−1)!(k−2)!)；k = 1 时为 1"""
    if k < 1:
        raise DomainError(f"需要 k ≥ 1，得到 {k}")
    if k == 1:
        return Fraction(1)
    return Fraction(factorial(2 * k - 3), 2 ** (2 * k - 3) * factorial(k - 1) * factorial(k - 2))


def pi_coefficient_closed_form(d: int, n: int) -> Fraction:
    """I(d,2n) 的 π 系数的闭式：ide1·ide2·¼"""
    return ide1_coefficient(d, n) * ide2_coefficient(d - n) * Fraction(1, 4)


def fj_integral(j: int) -> ExactScalar:
    """∫₀¹ F_j(x) dx = Σ_{m=0}^{2j−1} (−1)^m C(4j, 2m+1)·I(2j+1, m+1)"""
    if j < 1:
        raise DomainError(f"需要 j ≥ 1，得到 {j}")
    total = ExactScalar()
    for m in range(2 * j):
        term = int_I((2 * j + 1, m + 1)).scale((-1) ** m * comb(4 * j, 2 * m + 1))
        total = total + term
    return total


def center_value(k: int) -> ExactScalar:
    """B^k(χ_{Q₀})(0)

    k 奇数时由旋转对称恰为 0；k = 2j 时等于 (−4/π)·∫₀¹F_j = 1 − 4q_j/π。
    """
    if k < 1:
        raise DomainError(f"需要 k ≥ 1，得到 {k}")
    if k % 2 == 1:
        return ExactScalar()
    return fj_integral(k // 2).scale(-4).divide_by_pi()


def coefficient(j: int) -> Fraction:
    """(4j)!/((2j)!(2j−1)!·2^{4j−1})"""
    if j < 1:
        raise DomainError(f"需要 j ≥ 1，得到 {j}")
    return Fraction(factorial(4 * j), factorial(2 * j) * factorial(2 * j - 1) * 2 ** (4 * j - 1))


def sum_S(j: int) -> Fraction:
    """S = Σ_{m=0}^{2j−1} (−1)^m C(2j−1, m)/(4j−2m−1)"""
    if j < 1:
        raise DomainError(f"需要 j ≥ 1，得到 {j}")
    return sum(
        (Fraction((-1) ** m * comb(2 * j - 1, m), 4 * j - 2 * m - 1) for m in range(2 * j)),
        Fraction(0),
    )


def suma_lhs(j: int) -> Fraction:
    """恒等式左端：求和项减去 (4j)!/((2j−1)!(2j)!·2^{4j−1})，应恰为 −1"""
    if j < 1:
        raise DomainError(f"需要 j ≥ 1，得到 {j}")
    total = Fraction(0)
    for m in range(2 * j - 1):
        numerator = (-1) ** m * comb(4 * j, 2 * m + 1) * factorial(2 * m + 1) * factorial(4 * j - 2 * m - 3)
        denominator = (
            factorial(m) * factorial(2 * j) * factorial(2 * j - m - 2) * 2 ** (4 * j - 2)
        )
        total += Fraction(numerator, denominator)
    return total - coefficient(j)


def _check_step(j: int, step: int):
    if j < 1:
        raise DomainError(f"需要 j ≥ 1，得到 {j}")
    if not 0 <= step <= 2 * j - 1:
        raise DomainError(f"step 必须位于 [0, {2 * j - 1}]，得到 {step}")


def telescope_step(j: int, step: int) -> Fraction:
    """S 经过 step 次"减常数再重排"之后的内层和

    第 s 步减去的常数是 1/(2s+1)（即求和末项的分母倒数），内层和变为
    Σ_{m=0}^{2j−1−s} (−1)^m C(2j−1−s, m)/(4j−2m−1)。
    step = 0 时就是 S 本身。
    """
    _check_step(j, step)
    top = 2 * j - 1 - step
    return sum(
        (Fraction((-1) ** m * comb(top, m), 4 * j - 2 * m - 1) for m in range(top + 1)),
        Fraction(0),
    )


def telescope_prefactor(j: int, step: int) -> Fraction:
    """累计前因子 P_step，满足 P_step·telescope_step(j, step) = S

    每一步乘以 −2N/(2s+1)，N = 2j−1−s。
    """
    _check_step(j, step)
    prefactor = Fraction(1)
    for s in range(step):
        top = 2 * j - 1 - s
        prefactor *= Fraction(-2 * top, 2 * s + 1)
    return prefactor


def e9_printed(j: int) -> Fraction:
    """排印形式的右端 −(4j)!/((2j)!(2j−1)!2^{4j−1})；与 S 不相等"""
    return -coefficient(j)


def e9_consistent(j: int) -> Fraction:
    """与求和恒等式一致的形式 −(2j)!(2j−1)!2^{4j−1}/(4j)!"""
    return -1 / coefficient(j)


def square_moment(n: int) -> Fraction:
    """μ_n = ∫_{[−1,1]²} (x − iy)^n dA

    按二项式展开逐项积分。由 ξ → iξ 的对称性，n 不是 4 的倍数时为 0，结果总是实有理数。
    """
    if n < 0:
        raise DomainError(f"需要 n ≥ 0，得到 {n}")
    total = Fraction(0)
    for p in range(0, n + 1, 2):
        if (n - p) % 2:
            continue
        # (−i)^p，p 为偶数时等于 (−1)^{p/2}
        sign = (-1) ** (p // 2)
        total += sign * comb(n, p) * Fraction(4, (n - p + 1) * (p + 1))
    return total
