"""单次实验运行的配置

优先级从低到高：字段默认值 < 平面 `key = value` 配置文件 < 命令行 `key=value` 覆盖与选项。
配置文件示例::

    # 反例参数
    alphas = 8, 16, 32, 64, 128
    m_cutoff = 5
    abs_tol = 1e-9
"""

import hashlib
import json
import logging
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence, Union

from pydantic import BaseModel, Field, ValidationError, field_validator

from ..core.config import LabConfig, QuadratureConfig
from ..core.exceptions import ConfigException

logger = logging.getLogger(__name__)

SUBCOMMANDS = (
    "identities",
    "lemma",
    "decay",
    "counterexample",
    "cotlar",
    "theorem-b",
    "spectral-validate",
    "all",
)


def _power_of_two(value: int) -> int:
    if value < 16 or value & (value - 1):
        raise ValueError(f"网格尺寸必须是不小于 16 的 2 的幂，得到 {value}")
    return value


class RunConfig(BaseModel):
    """一次 CLI 运行的全部参数"""

    model_config = {"extra": "forbid"}

    subcommand: str = Field(description="子命令名")
    output_dir: str = Field(default="./runs", description="输出根目录")
    seed: int = Field(default=0, description="随机种子")
    workers: int = Field(default=4, ge=1, description="参数点并行线程数")

    # 求积
    abs_tol: float = Field(default=1e-8, description="求积绝对容差")
    max_depth: int = Field(default=30, description="角向最大二分深度")
    outer_radius_factor: float = Field(default=20.0, description="外截断半径 / |z|")

    # 网格
    grid_n: int = Field(default=1024, description="谱验证网格尺寸 N")
    grid_l: float = Field(default=4.0, description="谱验证网格半宽 L")
    convergence_l: float = Field(default=8.0, description="收敛检查的网格半宽 L，需大于 2.5")
    export_fields: bool = Field(default=False, description="把 B(χ_D) 网格场写成 .bgf 文件")

    # 恒等式与引理
    identity_js: List[int] = Field(default_factory=lambda: list(range(1, 9)))
    orders: List[int] = Field(default_factory=lambda: [1, 2, 3, 4], description="中心值的阶数 k")

    # 衰减
    decay_orders: List[int] = Field(default_factory=lambda: [1, 2, 3])
    decay_radii: List[float] = Field(default_factory=lambda: [4.0, 8.0, 16.0, 32.0, 64.0])

    # 反例
    alphas: List[float] = Field(default_factory=lambda: [8.0, 16.0, 32.0, 64.0, 128.0])
    m_cutoff: float = Field(default=5.0, gt=0)
    with_m2: bool = Field(default=True, description="同时计算 M² 分母下的比值")

    # Cotlar 性质检查
    cotlar_orders: List[int] = Field(default_factory=lambda: [1, 3])
    cotlar_sizes: List[int] = Field(default_factory=lambda: [256, 512])
    cotlar_half_width: float = Field(default=8.0, gt=0)
    iterations: int = Field(default=2, ge=1, description="迭代极大算子的次数 j")

    # 扇形函数
    radii: List[float] = Field(default_factory=lambda: [30.0, 300.0, 3000.0])
    sector_orders: List[int] = Field(default_factory=lambda: [2])

    @field_validator(
        "identity_js", "orders", "decay_orders", "decay_radii", "alphas",
        "cotlar_orders", "cotlar_sizes", "radii", "sector_orders",
        mode="before",
    )
    @classmethod
    def _split_list(cls, value: Any) -> Any:
        if isinstance(value, str):
            value = [item.strip() for item in value.split(",") if item.strip()]
        return value

    @field_validator(
        "identity_js", "orders", "decay_orders", "decay_radii", "alphas",
        "cotlar_orders", "cotlar_sizes", "radii", "sector_orders",
    )
    @classmethod
    def _non_empty(cls, value: List[Any]) -> List[Any]:
        if not value:
            raise ValueError("列表参数不能为空")
        return value

    @field_validator("subcommand")
    @classmethod
    def _known_subcommand(cls, value: str) -> str:
        if value not in SUBCOMMANDS:
            raise ValueError(f"未知子命令 {value!r}，可选: {', '.join(SUBCOMMANDS)}")
        return value

    @field_validator("abs_tol", "grid_l", "outer_radius_factor")
    @classmethod
    def _positive(cls, value: float) -> float:
        if not value > 0:
            raise ValueError("必须为正数")
        return value

    @field_validator("convergence_l")
    @classmethod
    def _covers_band(cls, value: float) -> float:
        if not value > 2.5:
            raise ValueError("收敛检查的环带 1.5 ≤ |z| ≤ 2.5 必须落在网格内")
        return value

    @field_validator("grid_n")
    @classmethod
    def _grid_size(cls, value: int) -> int:
        return _power_of_two(value)

    @field_validator("cotlar_sizes")
    @classmethod
    def _grid_sizes(cls, value: List[int]) -> List[int]:
        return [_power_of_two(v) for v in value]

    @field_validator("alphas")
    @classmethod
    def _alpha_range(cls, value: List[float]) -> List[float]:
        if any(a <= 2 for a in value):
            raise ValueError("α 必须大于 2")
        return value

    def quadrature(self) -> QuadratureConfig:
        """派生求积配置"""
        try:
            return QuadratureConfig(
                abs_tol=self.abs_tol,
                max_depth=self.max_depth,
                outer_radius_factor=self.outer_radius_factor,
            )
        except ValidationError as exc:
            raise ConfigException(f"求积配置无效: {exc}") from exc

    def for_subcommand(self, subcommand: str) -> "RunConfig":
        return self.model_copy(update={"subcommand": subcommand})

    def echo(self) -> Dict[str, Any]:
        """写入清单的配置回显（不含输出目录）"""
        data = self.model_dump(mode="json")
        data.pop("output_dir", None)
        return data

    def fingerprint(self) -> str:
        """配置回显的 SHA-256 前 8 位"""
        payload = json.dumps(self.echo(), sort_keys=True, separators=(",", ":"))
        return hashlib.sha256(payload.encode("utf-8")).hexdigest()[:8]

    def to_dict(self) -> Dict[str, Any]:
        return self.model_dump()


def parse_assignments(lines: Sequence[str], source: str) -> Dict[str, str]:
    """解析 `key = value` 行；`#` 之后为注释，空行忽略"""
    values: Dict[str, str] = {}
    for number, line in enumerate(lines, start=1):
        text = line.split("#", 1)[0].strip()
        if not text:
            continue
        if "=" not in text:
            raise ConfigException(f"{source}:{number}: 缺少 '='：{line.strip()!r}")
        key, value = (part.strip() for part in text.split("=", 1))
        if not key:
            raise ConfigException(f"{source}:{number}: 键为空")
        values[key.replace("-", "_")] = value
    return values


def read_config_file(path: Union[str, Path]) -> Dict[str, str]:
    path = Path(path)
    if not path.is_file():
        raise ConfigException(f"配置文件不存在: {path}")
    return parse_assignments(path.read_text(encoding="utf-8").splitlines(), str(path))


def load_run_config(
    subcommand: str,
    config_file: Optional[Union[str, Path]] = None,
    overrides: Sequence[str] = (),
    output_dir: Optional[str] = None,
    seed: Optional[int] = None,
    lab: Optional[LabConfig] = None,
) -> RunConfig:
    """合并默认值、配置文件与命令行覆盖

    Raises:
        ConfigException: 未知键、格式错误或校验失败
    """
    lab = lab or LabConfig.from_env()
    merged: Dict[str, Any] = {"output_dir": lab.output_dir, "workers": lab.max_workers}
    if config_file is not None:
        merged.update(read_config_file(config_file))
    merged.update(parse_assignments(list(overrides), "命令行"))
    if output_dir is not None:
        merged["output_dir"] = output_dir
    if seed is not None:
        merged["seed"] = seed
    merged["subcommand"] = subcommand

    unknown = sorted(set(merged) - set(RunConfig.model_fields))
    if unknown:
        raise ConfigException(f"未知配置键: {', '.join(unknown)}")
    try:
        config = RunConfig(**merged)
    except ValidationError as exc:
        raise ConfigException(f"配置校验失败: {exc}") from exc
    logger.debug("运行配置: %s", config.echo())
    return config
