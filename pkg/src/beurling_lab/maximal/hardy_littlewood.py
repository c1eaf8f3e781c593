"""网格上的 Hardy–Littlewood 极大算子

M 取中心、与坐标轴平行的正方形 Q(z, 2r)。网格版本用求和面积表（summed-area table）
一次性得到所有节点上的窗口平均；越过区域边界的窗口直接跳过，不做重新归一化。
每个节点自身所在的单元总是参与比较，因此 M f ≥ |f| 逐点成立。

另外给出 M(χ_{Q₀}) 的逐点闭式与基于求积的 M²(χ_{Q₀})。
"""

import logging
import math
from typing import Iterable, Sequence, Tuple

import numpy as np
from pydantic import BaseModel, Field, field_validator
from scipy.optimize import minimize_scalar

from ..core.exceptions import ConvergenceError, DomainError
from ..quadrature.regions import Rectangle
from ..quadrature.rules import box_integrate
from ..spectral.grid import GridField

logger = logging.getLogger(__name__)


def _strictly_increasing(values: Sequence[float], what: str) -> Tuple[float, ...]:
    values = tuple(float(v) for v in values)
    if not values:
        raise ValueError(f"{what} 不能为空")
    if values[0] <= 0:
        raise ValueError(f"{what} 必须为正，得到 {values[0]}")
    if any(b <= a for a, b in zip(values, values[1:])):
        raise ValueError(f"{what} 必须严格递增")
    return values


def _sorted_unique(values: Iterable[float]) -> Tuple[float, ...]:
    ordered = sorted(float(v) for v in values)
    merged = []
    for v in ordered:
        if not merged or v > merged[-1] * (1 + 1e-12):
            merged.append(v)
    return tuple(merged)


class WindowSet(BaseModel):
    """窗口半边长集合（离散化 M 定义中对尺度的上确界）"""

    model_config = {"frozen": True}

    half_sides: Tuple[float, ...] = Field(description="严格递增的窗口半边长")

    @field_validator("half_sides")
    @classmethod
    def _check(cls, value: Tuple[float, ...]) -> Tuple[float, ...]:
        return _strictly_increasing(value, "窗口半边长")

    @classmethod
    def dyadic(cls, h: float, max_half_side: float, extras: Iterable[float] = ()) -> "WindowSet":
        """h·2^m (m = 0, 1, ...) 直到 max_half_side，外加 extras"""
        if h <= 0 or max_half_side < h:
            raise DomainError(f"无效的窗口范围: h={h}, max={max_half_side}")
        sides = []
        r = h
        while r <= max_half_side * (1 + 1e-12):
            sides.append(r)
            r *= 2.0
        sides.extend(e for e in extras if e >= h)
        return cls(half_sides=_sorted_unique(sides))

    @classmethod
    def for_grid(cls, field: GridField, extras: Iterable[float] = ()) -> "WindowSet":
        """默认窗口集：h·2^m 直到 L/2"""
        return cls.dyadic(field.h, field.half_width / 2.0, extras)

    def cell_radii(self, h: float) -> Tuple[int, ...]:
        """半边长 r 对应的单元半径 m = ⌈r/h − ½⌉，窗口为 (2m+1)×(2m+1) 个单元"""
        radii = {max(0, math.ceil(r / h - 0.5 - 1e-12)) for r in self.half_sides}
        return tuple(sorted(radii))

    def margin(self, h: float) -> int:
        return max(self.cell_radii(h))

    def __len__(self) -> int:
        return len(self.half_sides)


class EpsilonSet(BaseModel):
    """截断参数 ε 的集合（离散化 T* 定义中对 ε 的上确界）"""

    model_config = {"frozen": True}

    levels: Tuple[float, ...] = Field(description="严格递增的正截断参数")

    @field_validator("levels")
    @classmethod
    def _check(cls, value: Tuple[float, ...]) -> Tuple[float, ...]:
        return _strictly_increasing(value, "截断参数")

    @classmethod
    def geometric(
        cls, start: float, stop: float, ratio: float = math.sqrt(2.0), extras: Iterable[float] = ()
    ) -> "EpsilonSet":
        """start·ratio^m 直到 stop，外加 extras"""
        if start <= 0 or stop < start or ratio <= 1:
            raise DomainError(f"无效的几何序列: start={start}, stop={stop}, ratio={ratio}")
        count = int(math.floor(math.log(stop / start) / math.log(ratio) + 1e-9)) + 1
        levels = [start * ratio ** m for m in range(count)]
        levels.extend(e for e in extras if e > 0)
        return cls(levels=_sorted_unique(levels))

    @classmethod
    def for_grid(cls, field: GridField, extras: Iterable[float] = ()) -> "EpsilonSet":
        """默认截断集：公比 √2，从 h 到 4L"""
        return cls.geometric(field.h, 4.0 * field.half_width, extras=extras)

    def with_levels(self, *extra: float) -> "EpsilonSet":
        return EpsilonSet(levels=_sorted_unique(self.levels + tuple(extra)))

    def __len__(self) -> int:
        return len(self.levels)


def summed_area_table(values: np.ndarray) -> np.ndarray:
    """(N+1)×(N+1) 前缀和表，首行首列为零"""
    n0, n1 = values.shape
    table = np.zeros((n0 + 1, n1 + 1), dtype=float)
    table[1:, 1:] = np.cumsum(np.cumsum(values, axis=0), axis=1)
    return table


def block_means(table: np.ndarray, m: int) -> np.ndarray:
    """所有完整 (2m+1)² 窗口的平均，结果对应节点 [m, N−1−m]²"""
    n = table.shape[0] - 1
    w = 2 * m + 1
    total = (
        table[w:n + 1, w:n + 1]
        - table[0:n + 1 - w, w:n + 1]
        - table[w:n + 1, 0:n + 1 - w]
        + table[0:n + 1 - w, 0:n + 1 - w]
    )
    return total / float(w * w)


def hl_maximal(field: GridField, windows: WindowSet) -> GridField:
    """M f：每个节点上对所有完整窗口求 |f| 的平均并取最大"""
    magnitude = np.abs(field.samples).astype(float)
    out = magnitude.copy()
    table = summed_area_table(magnitude)
    n = field.n
    for m in windows.cell_radii(field.h):
        if m == 0:
            continue
        if 2 * m + 1 > n:
            logger.debug("窗口半径 %d 个单元超出网格 N=%d，跳过", m, n)
            continue
        inner = out[m:n - m, m:n - m]
        np.maximum(inner, block_means(table, m), out=inner)
    return GridField(out, field.half_width)


def iterate_maximal(field: GridField, windows: WindowSet, j: int) -> GridField:
    """M^j f"""
    if j < 1:
        raise DomainError(f"迭代次数必须为正整数: {j}")
    current = field
    for _ in range(j):
        current = hl_maximal(current, windows)
    return current


def interior_mask(n: int, margin: int) -> np.ndarray:
    """距边界至少 margin 个单元的节点"""
    mask = np.zeros((n, n), dtype=bool)
    if 2 * margin < n:
        mask[margin:n - margin, margin:n - margin] = True
    return mask


def _overlap(c: np.ndarray, r: np.ndarray) -> np.ndarray:
    """[c−r, c+r] 与 [−1, 1] 的交长，c ≥ 0"""
    return np.maximum(0.0, np.minimum(np.minimum(2.0 * r, 1.0 - c + r), 2.0))


def _window_value(a: np.ndarray, b: np.ndarray, r: np.ndarray) -> np.ndarray:
    with np.errstate(divide="ignore", invalid="ignore"):
        value = _overlap(a, r) * _overlap(b, r) / (4.0 * r * r)
    return np.where(np.isfinite(r) & (r > 0), value, -np.inf)


def _edge_limit(c: np.ndarray) -> np.ndarray:
    return np.where(c < 1.0, 1.0, np.where(c == 1.0, 0.5, 0.0))


def square_indicator_maximal(w):
    """M(χ_{Q₀})(w) 的闭式

    重叠长度关于 r 分段线性，平均值 ox·oy/(4r²) 在每段上是 s = 1/r 的二次函数，
    最大值只可能出现在分段点、驻点或 r → 0⁺。
    """
    scalar = np.isscalar(w)
    arr = np.asarray(w, dtype=complex)
    flat = arr.ravel()
    a = np.abs(flat.real)
    b = np.abs(flat.imag)

    candidates = [np.abs(a - 1.0), a + 1.0, np.abs(b - 1.0), b + 1.0]
    pieces_x = [(1.0 - a, 1.0), (2.0 * np.ones_like(a), 0.0)]
    pieces_y = [(1.0 - b, 1.0), (2.0 * np.ones_like(b), 0.0)]
    with np.errstate(divide="ignore", invalid="ignore"):
        for a1, b1 in pieces_x:
            for a2, b2 in pieces_y:
                s = -(a1 * b2 + a2 * b1) / (2.0 * a1 * a2)
                candidates.append(1.0 / s)

    best = _edge_limit(a) * _edge_limit(b)
    for r in candidates:
        best = np.maximum(best, _window_value(a, b, r))
    result = best.reshape(arr.shape)
    return float(result) if scalar else result


def iterated_square_indicator(
    z: complex,
    rel_tol: float = 1e-4,
    grid_points: int = 48,
    quadrature_order: int = 6,
    max_level: int = 12,
) -> float:
    """M²(χ_{Q₀})(z)：对 r 取 (1/4r²)∫_{Q(z,2r)} M(χ_{Q₀}) 的上确界

    先在几何 r 网格上取最大，再用有界一维优化在相邻网格点之间细化。
    """
    z = complex(z)
    scale = max(square_indicator_maximal(z), 1e-300)

    def average(r: float) -> float:
        window = Rectangle(z, r)
        tol = rel_tol * scale * window.area
        try:
            result = box_integrate(square_indicator_maximal, window, tol, quadrature_order, max_level)
            value = result.value
        except ConvergenceError as exc:
            logger.warning("M² 窗口 r=%.6g 的求积未达到容差，使用当前估计", r)
            value = exc.estimate
        return float(np.real(value)) / window.area

    r_min = 0.25
    r_max = 4.0 * (abs(z) + 2.0)
    radii = np.geomspace(r_min, r_max, grid_points)
    values = np.array([average(r) for r in radii])
    idx = int(np.argmax(values))
    lo = math.log(radii[max(idx - 1, 0)])
    hi = math.log(radii[min(idx + 1, grid_points - 1)])
    best = float(values[idx])
    if hi > lo:
        refined = minimize_scalar(
            lambda t: -average(math.exp(t)),
            bounds=(lo, hi),
            method="bounded",
            options={"xatol": 1e-4},
        )
        best = max(best, float(-refined.fun))
    logger.debug("M²(χ_Q0)(%s) = %.10g", z, best)
    return best


def maximal_at(field: GridField, windows: WindowSet, z: complex, j: int = 1) -> float:
    """M^j f 在离 z 最近节点上的值"""
    return float(iterate_maximal(field, windows, j).value_at(z))
