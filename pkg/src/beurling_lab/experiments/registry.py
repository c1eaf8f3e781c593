"""实验注册表"""

import logging
from typing import Dict, List, Optional

from ..core.exceptions import ConfigException
from .base import Experiment

logger = logging.getLogger(__name__)


class ExperimentRegistry:
    """按子命令名管理实验"""

    def __init__(self):
        self._experiments: Dict[str, Experiment] = {}

    def register(self, experiment: Experiment):
        if experiment.name in self._experiments:
            logger.warning("实验 '%s' 已存在，将被覆盖", experiment.name)
        self._experiments[experiment.name] = experiment
        logger.debug("实验 '%s' 已注册", experiment.name)

    def unregister(self, name: str) -> bool:
        return self._experiments.pop(name, None) is not None

    def get(self, name: str) -> Optional[Experiment]:
        return self._experiments.get(name)

    def require(self, name: str) -> Experiment:
        experiment = self._experiments.get(name)
        if experiment is None:
            raise ConfigException(f"未注册的实验: {name}")
        return experiment

    def list_experiments(self) -> List[str]:
        """按注册顺序列出实验名"""
        return list(self._experiments)

    def describe(self) -> str:
        lines = [f"- {e.name}: {e.description}" for e in self._experiments.values()]
        return "\n".join(lines) if lines else "暂无已注册的实验"

    def clear(self):
        self._experiments.clear()

    def __contains__(self, name: str) -> bool:
        return name in self._experiments

    def __len__(self) -> int:
        return len(self._experiments)


def _builtin_registry() -> ExperimentRegistry:
    from .builtin import builtin_experiments

    registry = ExperimentRegistry()
    for experiment in builtin_experiments():
        registry.register(experiment)
    return registry


# 全局实验注册表（包含全部内置实验）
global_registry = _builtin_registry()
