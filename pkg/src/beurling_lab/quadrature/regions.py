"""平面区域代数

求积器按极坐标"射线投射"工作：对从极点出发、方向为 θ 的射线，
每个区域都能给出射线落在区域内的 r 区间列表（区间算术），复合区域再做并、交、差。

另外每个区域还要报告"关键角"：射线经过角点、与圆相切、或穿过两条边界交点的方向。
关键角之间射线区间的端点随 θ 光滑变化，外层角向积分据此切分初始面板。
"""

import math
from abc import ABC, abstractmethod
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

import numpy as np

Interval = Tuple[float, float]

# 长度低于该值的射线区间视为空
_EMPTY = 1e-14


# ---------------------------------------------------------------------------
# 区间列表运算
# ---------------------------------------------------------------------------

def merge_intervals(intervals: Sequence[Interval]) -> List[Interval]:
    """合并重叠区间，返回按左端点排序的不相交列表"""
    items = sorted((a, b) for a, b in intervals if b - a > _EMPTY)
    merged: List[Interval] = []
    for a, b in items:
        if merged and a <= merged[-1][1]:
            if b > merged[-1][1]:
                merged[-1] = (merged[-1][0], b)
        else:
            merged.append((a, b))
    return merged


def intersect_intervals(left: Sequence[Interval], right: Sequence[Interval]) -> List[Interval]:
    out: List[Interval] = []
    i = j = 0
    left = merge_intervals(left)
    right = merge_intervals(right)
    while i < len(left) and j < len(right):
        a = max(left[i][0], right[j][0])
        b = min(left[i][1], right[j][1])
        if b - a > _EMPTY:
            out.append((a, b))
        if left[i][1] < right[j][1]:
            i += 1
        else:
            j += 1
    return out


def subtract_intervals(base: Sequence[Interval], removed: Sequence[Interval]) -> List[Interval]:
    out: List[Interval] = []
    removed = merge_intervals(removed)
    for a, b in merge_intervals(base):
        cursor = a
        for c, d in removed:
            if d <= cursor or c >= b:
                continue
            if c - cursor > _EMPTY:
                out.append((cursor, c))
            cursor = max(cursor, d)
            if cursor >= b:
                break
        if b - cursor > _EMPTY:
            out.append((cursor, b))
    return out


# ---------------------------------------------------------------------------
# 边界曲线（只用于求关键角）
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Segment:
    start: complex
    end: complex


@dataclass(frozen=True)
class Circle:
    center: complex
    radius: float


Curve = Segment | Circle


def _cross(a: complex, b: complex) -> float:
    return a.real * b.imag - a.imag * b.real


def _segment_segment(s: Segment, t: Segment) -> List[complex]:
    d1 = s.end - s.start
    d2 = t.end - t.start
    denom = _cross(d1, d2)
    if abs(denom) < 1e-15:
        return []
    diff = t.start - s.start
    u = _cross(diff, d2) / denom
    v = _cross(diff, d1) / denom
    if -1e-12 <= u <= 1 + 1e-12 and -1e-12 <= v <= 1 + 1e-12:
        return [s.start + u * d1]
    return []


def _segment_circle(s: Segment, c: Circle) -> List[complex]:
    d = s.end - s.start
    f = s.start - c.center
    a = abs(d) ** 2
    if a == 0:
        return []
    b = 2 * (f.real * d.real + f.imag * d.imag)
    cc = abs(f) ** 2 - c.radius ** 2
    disc = b * b - 4 * a * cc
    if disc < 0:
        return []
    root = math.sqrt(disc)
    points = []
    for t in ((-b - root) / (2 * a), (-b + root) / (2 * a)):
        if -1e-12 <= t <= 1 + 1e-12:
            points.append(s.start + t * d)
    return points


def _circle_circle(c1: Circle, c2: Circle) -> List[complex]:
    delta = c2.center - c1.center
    dist = abs(delta)
    if dist == 0 or dist > c1.radius + c2.radius or dist < abs(c1.radius - c2.radius):
        return []
    a = (c1.radius ** 2 - c2.radius ** 2 + dist ** 2) / (2 * dist)
    h = math.sqrt(max(c1.radius ** 2 - a * a, 0.0))
    base = c1.center + a * delta / dist
    offset = h * 1j * delta / dist
    return [base + offset, base - offset]


def curve_intersections(first: Curve, second: Curve) -> List[complex]:
    """两条边界曲线的交点"""
    if isinstance(first, Segment) and isinstance(second, Segment):
        return _segment_segment(first, second)
    if isinstance(first, Segment):
        return _segment_circle(first, second)
    if isinstance(second, Segment):
        return _segment_circle(second, first)
    return _circle_circle(first, second)


def _angle_to(pole: complex, point: complex) -> Optional[float]:
    diff = point - pole
    if abs(diff) < 1e-13:
        return None
    return math.atan2(diff.imag, diff.real)


def _curve_angles(pole: complex, curve: Curve) -> List[float]:
    """曲线自身贡献的关键角：线段端点 / 圆的切线方向 / 极点落在边界上时的切向"""
    angles: List[float] = []
    if isinstance(curve, Segment):
        for point in (curve.start, curve.end):
            angle = _angle_to(pole, point)
            if angle is not None:
                angles.append(angle)
        direction = curve.end - curve.start
        if abs(_cross(direction, pole - curve.start)) <= 1e-12 * max(abs(direction), 1.0):
            phi = math.atan2(direction.imag, direction.real)
            angles.extend([phi, phi + math.pi])
        return angles
    offset = curve.center - pole
    dist = abs(offset)
    phi = math.atan2(offset.imag, offset.real)
    if dist > curve.radius:
        spread = math.asin(curve.radius / dist)
        angles.extend([phi - spread, phi + spread])
    elif abs(dist - curve.radius) <= 1e-12 * max(curve.radius, 1.0):
        angles.extend([phi + math.pi / 2, phi - math.pi / 2])
    return angles


# ---------------------------------------------------------------------------
# 区域
# ---------------------------------------------------------------------------

class Region(ABC):
    """区域基类"""

    @abstractmethod
    def ray_intervals(self, pole: complex, theta: float) -> List[Interval]:
        """射线 pole + r·e^{iθ}（r ≥ 0）落在区域内的 r 区间"""

    @abstractmethod
    def contains(self, w) -> np.ndarray:
        """逐点判断是否属于区域（闭集）"""

    @abstractmethod
    def curves(self) -> List[Curve]:
        """边界曲线"""

    @abstractmethod
    def reflected(self, z: complex) -> "Region":
        """像集 {z − u : u ∈ 区域}"""

    @abstractmethod
    def anchor(self) -> complex:
        """无奇点时默认的极坐标原点"""

    def critical_angles(self, pole: complex) -> List[float]:
        """关键角：各边界曲线自身的关键角加上曲线两两交点的方向"""
        curves = self.curves()
        angles: List[float] = []
        for curve in curves:
            angles.extend(_curve_angles(pole, curve))
        for i in range(len(curves)):
            for j in range(i + 1, len(curves)):
                for point in curve_intersections(curves[i], curves[j]):
                    angle = _angle_to(pole, point)
                    if angle is not None:
                        angles.append(angle)
        return angles

    def __sub__(self, other: "Region") -> "Region":
        return Difference(self, other)

    def __or__(self, other: "Region") -> "Region":
        return Union([self, other])

    def __and__(self, other: "Region") -> "Region":
        return Intersection([self, other])


def _direction(theta: float) -> complex:
    return complex(math.cos(theta), math.sin(theta))


@dataclass(frozen=True)
class Rectangle(Region):
    """轴平行矩形，由中心与两个半宽描述"""

    center: complex
    half_width: float
    half_height: Optional[float] = None

    def __post_init__(self):
        if self.half_height is None:
            object.__setattr__(self, "half_height", self.half_width)
        object.__setattr__(self, "center", complex(self.center))
        if self.half_width < 0 or self.half_height < 0:
            raise ValueError("矩形半宽必须非负")

    @classmethod
    def square(cls, center: complex, side: float) -> "Rectangle":
        """Q(center, side)：边长为 side 的正方形"""
        return cls(center, side / 2.0)

    @property
    def bounds(self) -> Tuple[float, float, float, float]:
        c = self.center
        return (
            c.real - self.half_width,
            c.real + self.half_width,
            c.imag - self.half_height,
            c.imag + self.half_height,
        )

    @property
    def area(self) -> float:
        return 4.0 * self.half_width * self.half_height

    def corners(self) -> List[complex]:
        x1, x2, y1, y2 = self.bounds
        return [complex(x1, y1), complex(x2, y1), complex(x2, y2), complex(x1, y2)]

    def ray_intervals(self, pole: complex, theta: float) -> List[Interval]:
        x1, x2, y1, y2 = self.bounds
        e = _direction(theta)
        lo, hi = 0.0, math.inf
        for p, d, a, b in ((pole.real, e.real, x1, x2), (pole.imag, e.imag, y1, y2)):
            if abs(d) < 1e-15:
                if p < a or p > b:
                    return []
                continue
            t1, t2 = (a - p) / d, (b - p) / d
            if t1 > t2:
                t1, t2 = t2, t1
            lo, hi = max(lo, t1), min(hi, t2)
        if hi - lo > _EMPTY:
            return [(lo, hi)]
        return []

    def contains(self, w) -> np.ndarray:
        w = np.asarray(w, dtype=complex)
        return (np.abs(w.real - self.center.real) <= self.half_width) & (
            np.abs(w.imag - self.center.imag) <= self.half_height
        )

    def curves(self) -> List[Curve]:
        pts = self.corners()
        return [Segment(pts[i], pts[(i + 1) % 4]) for i in range(4)]

    def reflected(self, z: complex) -> "Rectangle":
        return Rectangle(z - self.center, self.half_width, self.half_height)

    def anchor(self) -> complex:
        return self.center


@dataclass(frozen=True)
class Disk(Region):
    """闭圆盘 D(center, radius)"""

    center: complex
    radius: float

    def __post_init__(self):
        object.__setattr__(self, "center", complex(self.center))
        if self.radius < 0:
            raise ValueError("半径必须非负")

    @property
    def area(self) -> float:
        return math.pi * self.radius ** 2

    def ray_intervals(self, pole: complex, theta: float) -> List[Interval]:
        e = _direction(theta)
        d = pole - self.center
        proj = d.real * e.real + d.imag * e.imag
        disc = proj * proj - (abs(d) ** 2 - self.radius ** 2)
        if disc <= 0:
            return []
        root = math.sqrt(disc)
        lo, hi = max(-proj - root, 0.0), -proj + root
        if hi - lo > _EMPTY:
            return [(lo, hi)]
        return []

    def contains(self, w) -> np.ndarray:
        return np.abs(np.asarray(w, dtype=complex) - self.center) <= self.radius

    def curves(self) -> List[Curve]:
        return [Circle(self.center, self.radius)]

    def reflected(self, z: complex) -> "Disk":
        return Disk(z - self.center, self.radius)

    def anchor(self) -> complex:
        return self.center


def _half_plane_interval(pole: complex, origin: complex, normal: complex, theta: float) -> List[Interval]:
    """{p : normal·(p − origin) ≥ 0} 与射线的交"""
    e = _direction(theta)
    base = normal.real * (pole - origin).real + normal.imag * (pole - origin).imag
    slope = normal.real * e.real + normal.imag * e.imag
    if abs(slope) < 1e-15:
        return [(0.0, math.inf)] if base >= 0 else []
    cut = -base / slope
    if slope > 0:
        return [(max(cut, 0.0), math.inf)]
    return [(0.0, cut)] if cut > 0 else []


@dataclass(frozen=True)
class AnnularSector(Region):
    """环形扇区 {center + ρe^{iφ} : r_in ≤ ρ ≤ r_out, θ1 ≤ φ ≤ θ2}，张角须小于 π"""

    center: complex
    r_in: float
    r_out: float
    theta1: float
    theta2: float

    def __post_init__(self):
        object.__setattr__(self, "center", complex(self.center))
        if not 0 <= self.r_in < self.r_out:
            raise ValueError("需要 0 ≤ r_in < r_out")
        if not 0 < self.theta2 - self.theta1 < math.pi:
            raise ValueError("扇区张角必须位于 (0, π)")

    def ray_intervals(self, pole: complex, theta: float) -> List[Interval]:
        ring = subtract_intervals(
            Disk(self.center, self.r_out).ray_intervals(pole, theta),
            Disk(self.center, self.r_in).ray_intervals(pole, theta) if self.r_in > 0 else [],
        )
        if not ring:
            return []
        # 左于 θ1 方向、右于 θ2 方向
        n1 = 1j * _direction(self.theta1)
        n2 = -1j * _direction(self.theta2)
        wedge = intersect_intervals(
            _half_plane_interval(pole, self.center, n1, theta),
            _half_plane_interval(pole, self.center, n2, theta),
        )
        return intersect_intervals(ring, wedge)

    def contains(self, w) -> np.ndarray:
        offset = np.asarray(w, dtype=complex) - self.center
        rho = np.abs(offset)
        phi = np.mod(np.angle(offset) - self.theta1, 2 * math.pi)
        return (rho >= self.r_in) & (rho <= self.r_out) & (phi <= self.theta2 - self.theta1)

    def curves(self) -> List[Curve]:
        e1, e2 = _direction(self.theta1), _direction(self.theta2)
        c = self.center
        curves: List[Curve] = [
            Segment(c + self.r_in * e1, c + self.r_out * e1),
            Segment(c + self.r_in * e2, c + self.r_out * e2),
            Circle(c, self.r_out),
        ]
        if self.r_in > 0:
            curves.append(Circle(c, self.r_in))
        return curves

    def reflected(self, z: complex) -> "AnnularSector":
        return AnnularSector(z - self.center, self.r_in, self.r_out,
                             self.theta1 + math.pi, self.theta2 + math.pi)

    def anchor(self) -> complex:
        mid = 0.5 * (self.theta1 + self.theta2)
        return self.center + 0.5 * (self.r_in + self.r_out) * _direction(mid)


@dataclass(frozen=True)
class Difference(Region):
    """base ∖ removed（集合意义，不要求包含关系）"""

    base: Region
    removed: Region

    def ray_intervals(self, pole: complex, theta: float) -> List[Interval]:
        kept = self.base.ray_intervals(pole, theta)
        if not kept:
            return []
        return subtract_intervals(kept, self.removed.ray_intervals(pole, theta))

    def contains(self, w) -> np.ndarray:
        return self.base.contains(w) & ~self.removed.contains(w)

    def curves(self) -> List[Curve]:
        return self.base.curves() + self.removed.curves()

    def reflected(self, z: complex) -> "Difference":
        return Difference(self.base.reflected(z), self.removed.reflected(z))

    def anchor(self) -> complex:
        return self.base.anchor()


@dataclass(frozen=True)
class Union(Region):
    """有限并"""

    parts: Tuple[Region, ...]

    def __init__(self, parts: Sequence[Region]):
        if not parts:
            raise ValueError("并集至少需要一个区域")
        object.__setattr__(self, "parts", tuple(parts))

    def ray_intervals(self, pole: complex, theta: float) -> List[Interval]:
        collected: List[Interval] = []
        for part in self.parts:
            collected.extend(part.ray_intervals(pole, theta))
        return merge_intervals(collected)

    def contains(self, w) -> np.ndarray:
        mask = self.parts[0].contains(w)
        for part in self.parts[1:]:
            mask = mask | part.contains(w)
        return mask

    def curves(self) -> List[Curve]:
        return [curve for part in self.parts for curve in part.curves()]

    def reflected(self, z: complex) -> "Union":
        return Union([part.reflected(z) for part in self.parts])

    def anchor(self) -> complex:
        return self.parts[0].anchor()


@dataclass(frozen=True)
class Intersection(Region):
    """有限交"""

    parts: Tuple[Region, ...]

    def __init__(self, parts: Sequence[Region]):
        if not parts:
            raise ValueError("交集至少需要一个区域")
        object.__setattr__(self, "parts", tuple(parts))

    def ray_intervals(self, pole: complex, theta: float) -> List[Interval]:
        current = self.parts[0].ray_intervals(pole, theta)
        for part in self.parts[1:]:
            if not current:
                return []
            current = intersect_intervals(current, part.ray_intervals(pole, theta))
        return current

    def contains(self, w) -> np.ndarray:
        mask = self.parts[0].contains(w)
        for part in self.parts[1:]:
            mask = mask & part.contains(w)
        return mask

    def curves(self) -> List[Curve]:
        return [curve for part in self.parts for curve in part.curves()]

    def reflected(self, z: complex) -> "Intersection":
        return Intersection([part.reflected(z) for part in self.parts])

    def anchor(self) -> complex:
        return self.parts[0].anchor()


# 常用区域
UNIT_SQUARE = Rectangle(0j, 1.0)  # Q₀ = [−1, 1]²
UNIT_DISK = Disk(0j, 1.0)
