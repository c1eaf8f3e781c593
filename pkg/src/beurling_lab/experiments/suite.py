"""实验套件：按顺序执行多个已注册的实验（`all` 子命令）"""

import logging
from typing import List, Optional

from ..core.manifest import RunManifest
from .config import RunConfig
from .registry import ExperimentRegistry, global_registry

logger = logging.getLogger(__name__)


class ExperimentSuite:
    """有序的实验序列，每一步产生自己的运行目录与清单"""

    def __init__(self, name: str, registry: Optional[ExperimentRegistry] = None):
        self.name = name
        self.registry = registry or global_registry
        self.steps: List[str] = []

    def add_step(self, experiment_name: str) -> "ExperimentSuite":
        self.registry.require(experiment_name)
        self.steps.append(experiment_name)
        logger.debug("套件 '%s' 添加步骤: %s", self.name, experiment_name)
        return self

    def execute(self, config: RunConfig) -> List[RunManifest]:
        """执行全部步骤；某一步结论失败不会中断后续步骤"""
        manifests = []
        for index, step in enumerate(self.steps, start=1):
            logger.info("套件 '%s' 步骤 %d/%d: %s", self.name, index, len(self.steps), step)
            manifests.append(self.registry.require(step).execute(config))
        failed = [m.subcommand for m in manifests if not m.passed]
        if failed:
            logger.warning("套件 '%s' 中未通过的实验: %s", self.name, ", ".join(failed))
        return manifests

    @classmethod
    def everything(cls, registry: Optional[ExperimentRegistry] = None) -> "ExperimentSuite":
        """按注册顺序包含全部实验"""
        suite = cls("all", registry)
        for name in suite.registry.list_experiments():
            suite.add_step(name)
        return suite
