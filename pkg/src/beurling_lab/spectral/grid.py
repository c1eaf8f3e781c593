"""均匀网格上的采样场

节点 (i, j) 对应 z = (−L + (i+½)h) + i·(−L + (j+½)h)，h = 2L/N；第一个下标沿 x。
场在构造后只读。

二进制格式（小端）：
    magic  4 字节  b"BGF1"
    N      uint32
    L      float64
    data   N·N 个 complex128，行主序，samples[i, j] 中 i 为行
"""

import logging
import math
import struct
from dataclasses import dataclass
from pathlib import Path
from typing import Callable, Optional, Tuple, Union

import numpy as np

from ..core.exceptions import DomainError, FormatError
from ..quadrature.integrand import Integrand

logger = logging.getLogger(__name__)

MAGIC = b"BGF1"
_HEADER = struct.Struct("<4sId")


def _is_power_of_two(n: int) -> bool:
    return n > 0 and (n & (n - 1)) == 0


@dataclass(frozen=True)
class GridField:
    """[−L, L]² 上的 N×N 中点采样场"""

    samples: np.ndarray
    half_width: float

    def __post_init__(self):
        arr = np.array(self.samples, copy=True)
        if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
            raise DomainError(f"采样必须是方阵，得到形状 {arr.shape}")
        n = arr.shape[0]
        if n < 16 or not _is_power_of_two(n):
            raise DomainError(f"N 必须是不小于 16 的 2 的幂，得到 {n}")
        if not self.half_width > 0:
            raise DomainError(f"半宽 L 必须为正，得到 {self.half_width}")
        arr.setflags(write=False)
        object.__setattr__(self, "samples", arr)
        object.__setattr__(self, "half_width", float(self.half_width))

    @property
    def n(self) -> int:
        return self.samples.shape[0]

    @property
    def h(self) -> float:
        return 2.0 * self.half_width / self.n

    def nodes(self) -> np.ndarray:
        return node_grid(self.n, self.half_width)

    def nearest_index(self, z: complex) -> Tuple[int, int]:
        z = complex(z)
        i = int(np.clip(math.floor((z.real + self.half_width) / self.h), 0, self.n - 1))
        j = int(np.clip(math.floor((z.imag + self.half_width) / self.h), 0, self.n - 1))
        return i, j

    def value_at(self, z: complex):
        """最近节点处的值"""
        return self.samples[self.nearest_index(z)]

    def mean(self) -> complex:
        return complex(np.mean(self.samples))

    def norm(self) -> float:
        """离散 L² 范数 (h²·Σ|f|²)^{1/2}"""
        return float(math.sqrt(self.h ** 2 * np.sum(np.abs(self.samples) ** 2)))

    def with_samples(self, samples: np.ndarray) -> "GridField":
        return GridField(samples, self.half_width)

    def __str__(self) -> str:
        return f"GridField(N={self.n}, L={self.half_width})"


def node_grid(n: int, half_width: float) -> np.ndarray:
    h = 2.0 * half_width / n
    coords = -half_width + (np.arange(n) + 0.5) * h
    return coords[:, None] + 1j * coords[None, :]


def raised_cosine_taper(n: int, half_width: float, fraction: float = 0.125) -> np.ndarray:
    """边缘宽度为 fraction·L 的升余弦窗（张量积），内部恒为 1"""
    if not 0 < fraction < 1:
        raise DomainError(f"taper 宽度比例必须位于 (0, 1)，得到 {fraction}")
    h = 2.0 * half_width / n
    coords = -half_width + (np.arange(n) + 0.5) * h
    edge = fraction * half_width
    dist = half_width - np.abs(coords)
    ramp = np.where(dist >= edge, 1.0, 0.5 * (1.0 - np.cos(math.pi * np.clip(dist, 0, None) / edge)))
    return ramp[:, None] * ramp[None, :]


def sample(
    f: Union[Integrand, Callable[[np.ndarray], np.ndarray]],
    n: int,
    half_width: float,
    taper: bool = False,
    taper_fraction: float = 0.125,
) -> GridField:
    """中点采样；Integrand 的支撑外取 0，恰好落在声明奇点上的节点置 0"""
    z = node_grid(n, half_width)
    values = np.array(f(z), dtype=complex)
    if values.shape != z.shape:
        values = np.broadcast_to(values, z.shape).copy()
    singular = getattr(f, "singular_point", None)
    if singular is not None:
        values[np.abs(z - complex(singular)) < 1e-14 * half_width] = 0.0
    if taper:
        values = values * raised_cosine_taper(n, half_width, taper_fraction)
    return GridField(values, half_width)


def write_field(path: Union[str, Path], field: GridField) -> Path:
    """按文档中的二进制格式写出场"""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    data = np.ascontiguousarray(field.samples, dtype="<c16")
    with open(path, "wb") as handle:
        handle.write(_HEADER.pack(MAGIC, field.n, field.half_width))
        handle.write(data.tobytes(order="C"))
    logger.debug("写出网格场 %s 到 %s", field, path)
    return path


def read_field(path: Union[str, Path], expected_n: Optional[int] = None) -> GridField:
    """读取二进制场文件

    Raises:
        FormatError: 魔数、尺寸或数据长度不符
    """
    raw = Path(path).read_bytes()
    if len(raw) < _HEADER.size:
        raise FormatError("文件过短，缺少头部")
    magic, n, half_width = _HEADER.unpack_from(raw, 0)
    if magic != MAGIC:
        raise FormatError(f"魔数错误: {magic!r}")
    if expected_n is not None and n != expected_n:
        raise FormatError(f"尺寸不符: 期望 {expected_n}，文件中为 {n}")
    payload = raw[_HEADER.size:]
    if len(payload) != n * n * 16:
        raise FormatError(f"数据长度 {len(payload)} 与 N={n} 不符")
    samples = np.frombuffer(payload, dtype="<c16").reshape(n, n)
    try:
        return GridField(samples.astype(complex), half_width)
    except DomainError as exc:
        raise FormatError(str(exc)) from exc
