"""配置管理模块"""

import os
from typing import Optional, Dict, Any

from dotenv import load_dotenv
from pydantic import BaseModel, Field, field_validator

# 尽早加载 .env，使环境变量对所有配置生效
load_dotenv()

# CLI 默认输出目录的环境变量
OUTPUT_DIR_ENV = "BEURLING_LAB_OUT"


class LabConfig(BaseModel):
    """实验室全局配置,管理日志、输出目录与并发度"""

    # 系统配置
    debug: bool = False  # 是否启用调试模式
    log_level: str = "INFO"  # 日志记录级别

    # 输出配置
    output_dir: str = "./runs"  # 实验产物根目录

    # 并发配置
    max_workers: int = 4  # 参数点并行求值的线程数

    @classmethod
    def from_env(cls) -> "LabConfig":
        """从环境变量中创建配置实例"""
        return cls(
            debug=os.getenv("BEURLING_LAB_DEBUG", "false").lower() == "true",
            log_level=os.getenv("BEURLING_LAB_LOG_LEVEL", "INFO"),
            output_dir=os.getenv(OUTPUT_DIR_ENV, "./runs"),
            max_workers=int(os.getenv("BEURLING_LAB_MAX_WORKERS", "4")),
        )

    def to_dict(self) -> Dict[str, Any]:
        """将配置转换为字典"""
        return self.model_dump()


class QuadratureConfig(BaseModel):
    """自适应求积配置

    所有求积入口共享同一份只读配置；实验可以通过 `with_tolerance` 派生更紧或更松的副本。
    """

    abs_tol: float = Field(
        default=1e-8,
        description="目标绝对误差"
    )
    max_depth: int = Field(
        default=30,
        description="单个面板的最大二分深度"
    )
    base_rule_order: int = Field(
        default=8,
        description="每个面板上 Gauss-Legendre 规则的点数"
    )
    grading_ratio: float = Field(
        default=0.5,
        description="向奇点加密时相邻面板的长度比"
    )
    max_panels: int = Field(
        default=6000,
        description="全局自适应允许的最大面板数"
    )
    inner_max_level: int = Field(
        default=10,
        description="径向积分的最大一致加密层数"
    )
    outer_radius_factor: float = Field(
        default=20.0,
        description="无界区域截断半径与 |z| 的比例"
    )

    @field_validator("abs_tol")
    @classmethod
    def _check_tol(cls, value: float) -> float:
        if not value > 0:
            raise ValueError("abs_tol 必须为正数")
        return value

    @field_validator("max_depth")
    @classmethod
    def _check_depth(cls, value: int) -> int:
        if value < 4:
            raise ValueError("max_depth 至少为 4")
        return value

    @field_validator("grading_ratio")
    @classmethod
    def _check_grading(cls, value: float) -> float:
        if not 0.0 < value < 1.0:
            raise ValueError("grading_ratio 必须位于 (0, 1)")
        return value

    @field_validator("base_rule_order")
    @classmethod
    def _check_order(cls, value: int) -> int:
        if value < 2:
            raise ValueError("base_rule_order 至少为 2")
        return value

    def with_tolerance(self, abs_tol: float, max_depth: Optional[int] = None) -> "QuadratureConfig":
        """派生一个只修改容差（以及可选深度）的新配置"""
        update: Dict[str, Any] = {"abs_tol": abs_tol}
        if max_depth is not None:
            update["max_depth"] = max_depth
        return self.model_validate({**self.model_dump(), **update})

    def to_dict(self) -> Dict[str, Any]:
        """将配置转换为字典"""
        return self.model_dump()
