"""求积规则与自适应引擎

两种引擎：

- polar_integrate：以极点为原点的极坐标射线投射。外层角向用 Gauss-Legendre 面板做全局自适应
  （每个面板与它的两半比较），内层径向对每条射线的每个区间做逐层一致加密。
  奇点放在极点上时径向被积函数带有因子 r，-2 次齐次核的奇性因此只剩 1/r，
  配合"减去奇点值"的分裂后就是光滑函数。
- box_integrate：矩形上的张量 Gauss-Legendre 四叉树，逐层向量化。

两种引擎的求和顺序都只由细分结构决定，结果与调度无关。
"""

import heapq
import logging
import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, List, Optional, Tuple

import numpy as np

from ..core.config import QuadratureConfig
from ..core.exceptions import ConvergenceError
from .regions import Rectangle, Region

logger = logging.getLogger(__name__)

# 奇点处径向几何加密的层数
_GRADED_PIECES = 6
# 单次向量化求值的最大节点数
_CHUNK_NODES = 262144
# 初始角向面板的最大长度
_MAX_INITIAL_PANEL = math.pi / 8


@dataclass
class QuadratureResult:
    """求积结果"""

    value: complex
    error: float
    panels: int = 0
    evaluations: int = 0

    def __add__(self, other: "QuadratureResult") -> "QuadratureResult":
        return QuadratureResult(
            self.value + other.value,
            self.error + other.error,
            self.panels + other.panels,
            self.evaluations + other.evaluations,
        )


ZERO_RESULT = QuadratureResult(0j, 0.0)


@lru_cache(maxsize=16)
def gauss_legendre(order: int) -> Tuple[np.ndarray, np.ndarray]:
    """[-1, 1] 上的 Gauss-Legendre 节点与权重"""
    nodes, weights = np.polynomial.legendre.leggauss(order)
    nodes.setflags(write=False)
    weights.setflags(write=False)
    return nodes, weights


def fsum_complex(values) -> complex:
    """按给定顺序做补偿求和"""
    values = list(values)
    return complex(math.fsum(v.real for v in values), math.fsum(v.imag for v in values))


def radial_partition(a: float, b: float, graded: bool, grading_ratio: float) -> List[Tuple[float, float]]:
    """径向区间的基础划分

    - 从 0 开始且极点是奇点：向 0 几何加密
    - b/a > 4：几何划分（被积函数按 r 的幂次变化）
    - 其余：单个区间
    """
    if graded and a <= 0.0:
        pieces = []
        hi = b
        for _ in range(_GRADED_PIECES):
            lo = hi * grading_ratio
            pieces.append((lo, hi))
            hi = lo
        pieces.append((0.0, hi))
        return pieces[::-1]
    if a > 0.0 and b / a > 4.0:
        count = int(math.ceil(math.log2(b / a)))
        edges = a * (b / a) ** (np.arange(count + 1) / count)
        edges[0], edges[-1] = a, b
        return list(zip(edges[:-1].tolist(), edges[1:].tolist()))
    return [(a, b)]


class _RayEvaluator:
    """给定一批角度，计算 Φ(θ) = Σ_区间 ∫ f(pole + r e^{iθ}) r dr 及其误差"""

    def __init__(
        self,
        func: Callable[[np.ndarray], np.ndarray],
        region: Region,
        pole: complex,
        graded: bool,
        cfg: QuadratureConfig,
        inner_tol: float,
    ):
        self.func = func
        self.region = region
        self.pole = complex(pole)
        self.graded = graded
        self.cfg = cfg
        self.inner_tol = inner_tol
        self.nodes, self.weights = gauss_legendre(cfg.base_rule_order)
        self.evaluations = 0
        self.unconverged = 0

    def _pieces_value(self, level: int, lo, hi, direction) -> np.ndarray:
        sub = 2 ** level
        order = self.nodes.size
        per_piece = sub * order
        out = np.empty(lo.size, dtype=complex)
        step = max(1, _CHUNK_NODES // per_piece)
        offsets = np.arange(sub)[None, :, None] + (self.nodes[None, None, :] + 1.0) / 2.0
        for start in range(0, lo.size, step):
            sl = slice(start, start + step)
            width = (hi[sl] - lo[sl]) / sub
            r = lo[sl][:, None, None] + width[:, None, None] * offsets
            w = self.pole + r * direction[sl][:, None, None]
            values = np.asarray(self.func(w), dtype=complex) * r
            weighted = values * self.weights[None, None, :]
            out[sl] = weighted.sum(axis=(1, 2)) * (width / 2.0)
            self.evaluations += r.size
        return out

    def __call__(self, thetas: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
        owner, lows, highs = [], [], []
        for index, theta in enumerate(thetas):
            for a, b in self.region.ray_intervals(self.pole, float(theta)):
                for lo, hi in radial_partition(a, b, self.graded, self.cfg.grading_ratio):
                    owner.append(index)
                    lows.append(lo)
                    highs.append(hi)
        values = np.zeros(thetas.size, dtype=complex)
        errors = np.zeros(thetas.size)
        if not owner:
            return values, errors

        owner_arr = np.asarray(owner)
        lo = np.asarray(lows)
        hi = np.asarray(highs)
        direction = np.exp(1j * thetas[owner_arr])
        counts = np.bincount(owner_arr, minlength=thetas.size)
        piece_tol = self.inner_tol / counts[owner_arr]

        piece_val = np.zeros(lo.size, dtype=complex)
        piece_err = np.zeros(lo.size)
        previous = self._pieces_value(0, lo, hi, direction)
        active = np.arange(lo.size)
        for level in range(1, self.cfg.inner_max_level + 1):
            current = self._pieces_value(level, lo[active], hi[active], direction[active])
            diff = np.abs(current - previous[active])
            done = diff <= piece_tol[active]
            piece_val[active[done]] = current[done]
            piece_err[active[done]] = diff[done]
            remaining = active[~done]
            previous[remaining] = current[~done]
            if level == self.cfg.inner_max_level and remaining.size:
                piece_val[remaining] = current[~done]
                piece_err[remaining] = diff[~done]
                self.unconverged += int(remaining.size)
            active = remaining
            if active.size == 0:
                break

        values = np.bincount(owner_arr, weights=piece_val.real, minlength=thetas.size) + 1j * np.bincount(
            owner_arr, weights=piece_val.imag, minlength=thetas.size
        )
        errors = np.bincount(owner_arr, weights=piece_err, minlength=thetas.size)
        return values, errors


def _initial_breakpoints(angles: List[float]) -> List[float]:
    two_pi = 2.0 * math.pi
    points = sorted({0.0, two_pi, *(a % two_pi for a in angles)})
    cleaned = [points[0]]
    for p in points[1:]:
        if p - cleaned[-1] > 1e-12:
            cleaned.append(p)
    cleaned[-1] = two_pi
    refined = [cleaned[0]]
    for a, b in zip(cleaned[:-1], cleaned[1:]):
        parts = max(1, int(math.ceil((b - a) / _MAX_INITIAL_PANEL)))
        for i in range(1, parts + 1):
            refined.append(a + (b - a) * i / parts)
    return refined


@dataclass
class _Panel:
    ta: float
    tb: float
    depth: int
    whole: complex
    left: complex
    right: complex
    inner_error: float

    @property
    def estimate(self) -> complex:
        return self.left + self.right

    @property
    def error(self) -> float:
        return abs(self.whole - self.estimate) + self.inner_error


def polar_integrate(
    func: Callable[[np.ndarray], np.ndarray],
    region: Region,
    pole: complex,
    cfg: QuadratureConfig,
    singular: bool = False,
    abs_tol: Optional[float] = None,
) -> QuadratureResult:
    """以 pole 为原点在 region 上做极坐标自适应求积

    Args:
        func: 向量化复函数
        region: 积分区域
        pole: 极坐标原点
        singular: 极点是否为被积函数的奇点（决定径向是否向 0 加密）
        abs_tol: 覆盖 cfg.abs_tol

    Raises:
        ConvergenceError: 面板数或深度用尽仍未达到容差
    """
    tol = cfg.abs_tol if abs_tol is None else abs_tol
    evaluator = _RayEvaluator(func, region, pole, singular, cfg, tol / (8.0 * math.pi))
    nodes, weights = gauss_legendre(cfg.base_rule_order)

    def rule(ta: float, tb: float):
        return 0.5 * (ta + tb) + 0.5 * (tb - ta) * nodes

    breaks = _initial_breakpoints(region.critical_angles(pole))
    spans = list(zip(breaks[:-1], breaks[1:]))
    order = nodes.size

    # 初始面板一次性求值：整段 + 左半 + 右半
    thetas = []
    for ta, tb in spans:
        mid = 0.5 * (ta + tb)
        thetas.extend([rule(ta, tb), rule(ta, mid), rule(mid, tb)])
    values, errs = evaluator(np.concatenate(thetas)) if thetas else (np.zeros(0), np.zeros(0))

    heap: List[Tuple[float, int, _Panel]] = []
    counter = 0
    for i, (ta, tb) in enumerate(spans):
        block = slice(3 * order * i, 3 * order * (i + 1))
        v = values[block].reshape(3, order)
        e = errs[block].reshape(3, order)
        half = 0.25 * (tb - ta)
        panel = _Panel(
            ta, tb, 0,
            whole=complex(0.5 * (tb - ta) * (weights @ v[0])),
            left=complex(half * (weights @ v[1])),
            right=complex(half * (weights @ v[2])),
            inner_error=float(half * (weights @ (e[1] + e[2]))),
        )
        heapq.heappush(heap, (-panel.error, counter, panel))
        counter += 1

    def totals():
        panels = [item[2] for item in heap]
        err = math.fsum(p.error for p in panels)
        scale = math.fsum(abs(p.left) + abs(p.right) for p in panels)
        return err, scale

    total_error, scale = totals()
    target = max(tol, 64.0 * np.finfo(float).eps * scale)
    refinements = 0
    while total_error > target:
        neg_err, _, worst = heapq.heappop(heap)
        if worst.depth >= cfg.max_depth or len(heap) + 2 > cfg.max_panels:
            heapq.heappush(heap, (neg_err, counter, worst))
            estimate = fsum_complex(p.estimate for _, _, p in sorted(heap, key=lambda it: it[2].ta))
            raise ConvergenceError(
                f"极坐标求积未收敛: 误差 {total_error:.3e} > 容差 {target:.3e}",
                estimate=estimate,
                error_bound=total_error,
            )
        mid = 0.5 * (worst.ta + worst.tb)
        q1, q2, q3 = 0.5 * (worst.ta + mid), mid, 0.5 * (mid + worst.tb)
        batch = np.concatenate([rule(worst.ta, q1), rule(q1, q2), rule(q2, q3), rule(q3, worst.tb)])
        v, e = evaluator(batch)
        v = v.reshape(4, order)
        e = e.reshape(4, order)
        quarter = 0.25 * (worst.tb - worst.ta) / 2.0
        children = [
            _Panel(worst.ta, mid, worst.depth + 1, worst.left,
                   complex(quarter * (weights @ v[0])), complex(quarter * (weights @ v[1])),
                   float(quarter * (weights @ (e[0] + e[1])))),
            _Panel(mid, worst.tb, worst.depth + 1, worst.right,
                   complex(quarter * (weights @ v[2])), complex(quarter * (weights @ v[3])),
                   float(quarter * (weights @ (e[2] + e[3])))),
        ]
        for child in children:
            heapq.heappush(heap, (-child.error, counter, child))
            counter += 1
        refinements += 1
        if refinements % 64 == 0:
            total_error, scale = totals()
            target = max(tol, 64.0 * np.finfo(float).eps * scale)
        else:
            total_error += children[0].error + children[1].error + neg_err

    panels = sorted((item[2] for item in heap), key=lambda p: p.ta)
    value = fsum_complex(p.estimate for p in panels)
    error = math.fsum(p.error for p in panels)
    if evaluator.unconverged:
        logger.debug("径向加密未收敛的区间数: %d", evaluator.unconverged)
    logger.debug("极坐标求积: 面板 %d, 求值 %d, 误差 %.3e", len(panels), evaluator.evaluations, error)
    return QuadratureResult(value, error, len(panels), evaluator.evaluations)


def _tensor_rule(func, x1, x2, y1, y2, nodes, weights) -> np.ndarray:
    """批量矩形上的张量 Gauss-Legendre"""
    hx = 0.5 * (x2 - x1)
    hy = 0.5 * (y2 - y1)
    cx = 0.5 * (x1 + x2)
    cy = 0.5 * (y1 + y2)
    xs = cx[:, None, None] + hx[:, None, None] * nodes[None, :, None]
    ys = cy[:, None, None] + hy[:, None, None] * nodes[None, None, :]
    values = np.asarray(func(xs + 1j * ys), dtype=complex)
    w2 = weights[:, None] * weights[None, :]
    return (values * w2[None, :, :]).sum(axis=(1, 2)) * hx * hy


def box_integrate(
    func: Callable[[np.ndarray], np.ndarray],
    rect: Rectangle,
    abs_tol: float,
    order: int = 8,
    max_level: int = 14,
) -> QuadratureResult:
    """矩形上的自适应四叉树求积

    每个面板与它的四个子面板比较，误差低于按面积分配的容差即接受。
    """
    nodes, weights = gauss_legendre(order)
    x1, x2, y1, y2 = rect.bounds
    total_area = rect.area
    if total_area == 0:
        return QuadratureResult(0j, 0.0)

    px1, px2 = np.array([x1]), np.array([x2])
    py1, py2 = np.array([y1]), np.array([y2])
    coarse = _tensor_rule(func, px1, px2, py1, py2, nodes, weights)
    accepted: List[np.ndarray] = []
    errors: List[np.ndarray] = []
    evaluations = order * order
    panels = 0
    for _level in range(max_level + 1):
        mx, my = 0.5 * (px1 + px2), 0.5 * (py1 + py2)
        cx1 = np.stack([px1, mx, px1, mx], axis=1).ravel()
        cx2 = np.stack([mx, px2, mx, px2], axis=1).ravel()
        cy1 = np.stack([py1, py1, my, my], axis=1).ravel()
        cy2 = np.stack([my, my, py2, py2], axis=1).ravel()
        child = _tensor_rule(func, cx1, cx2, cy1, cy2, nodes, weights).reshape(-1, 4)
        evaluations += child.size * order * order
        fine = child.sum(axis=1)
        err = np.abs(fine - coarse)
        area = (px2 - px1) * (py2 - py1)
        done = err <= abs_tol * area / total_area
        accepted.append(fine[done])
        errors.append(err[done])
        panels += int(done.sum())
        keep = ~done
        if not keep.any():
            break
        coarse = child[keep].ravel()
        px1, px2 = cx1.reshape(-1, 4)[keep].ravel(), cx2.reshape(-1, 4)[keep].ravel()
        py1, py2 = cy1.reshape(-1, 4)[keep].ravel(), cy2.reshape(-1, 4)[keep].ravel()
    else:
        value = fsum_complex(np.concatenate(accepted + [coarse]))
        raise ConvergenceError(
            "四叉树求积在最大层数内未收敛",
            estimate=value,
            error_bound=float(np.sum(np.concatenate(errors))) if errors else None,
        )
    value = fsum_complex(np.concatenate(accepted))
    return QuadratureResult(value, math.fsum(np.concatenate(errors)), panels, evaluations)
