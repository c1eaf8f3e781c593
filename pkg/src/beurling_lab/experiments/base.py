"""实验基类"""

import logging
from abc import ABC, abstractmethod
from datetime import datetime, timezone
from pathlib import Path
from typing import Any, Dict, List, Optional

from pydantic import BaseModel

from ..core.manifest import RunManifest
from .config import RunConfig
from .writer import ResultWriter, make_run_id

logger = logging.getLogger(__name__)


class ExperimentParameter(BaseModel):
    """实验读取的 RunConfig 字段"""

    name: str
    type: str
    description: str
    default: Any = None


class Experiment(ABC):
    """实验基类：读取 RunConfig，写出 CSV，并向清单追加结论"""

    def __init__(self, name: str, description: str):
        self.name = name
        self.description = description

    @abstractmethod
    def run(self, config: RunConfig, writer: ResultWriter) -> None:
        """执行实验；产物通过 writer 写出，结论追加到 writer.manifest"""

    @abstractmethod
    def get_parameters(self) -> List[ExperimentParameter]:
        """实验使用的配置字段"""

    def parameter(self, field: str, description: Optional[str] = None) -> ExperimentParameter:
        """按 RunConfig 字段生成参数描述"""
        info = RunConfig.model_fields[field]
        default = info.get_default(call_default_factory=True)
        return ExperimentParameter(
            name=field,
            type=type(default).__name__,
            description=description or info.description or field,
            default=default,
        )

    def execute(self, config: RunConfig, now: Optional[datetime] = None) -> RunManifest:
        """创建运行目录与清单，执行实验并写出清单"""
        config = config.for_subcommand(self.name)
        now = now or datetime.now(timezone.utc)
        manifest = RunManifest(
            run_id=make_run_id(self.name, config.fingerprint(), now),
            subcommand=self.name,
            timestamp=now,
            config=config.echo(),
        )
        writer = ResultWriter(manifest, Path(config.output_dir))
        logger.info("开始实验 %s (run_id=%s)", self.name, manifest.run_id)
        self.run(config, writer)
        if not manifest.verdicts:
            manifest.add_verdict(f"{self.name}_produced_verdicts", "≥1", 0, False)
        manifest.summary.update(total=len(manifest.verdicts), failed=len(manifest.failures()))
        writer.write_manifest()
        logger.info("实验 %s 完成: %s", self.name, manifest)
        return manifest

    def to_dict(self) -> Dict[str, Any]:
        return {
            "name": self.name,
            "description": self.description,
            "parameters": [param.model_dump() for param in self.get_parameters()],
        }

    def __str__(self) -> str:
        return f"Experiment(name={self.name})"

    def __repr__(self) -> str:
        return self.__str__()
