"""
Beurling 变换数值实验室：精确恒等式、奇异积分求积、极大算子与截断反例。
"""

from .version import __version__, __author__, __email__, __description__

# 核心组件
from .core.config import LabConfig, QuadratureConfig
from .core.exceptions import (
    LabException,
    DomainError,
    ConvergenceError,
    ConfigException,
    CheckFailure,
    FormatError,
)
from .core.manifest import RunManifest, Verdict

# 数学层
from .kernels import KernelSpec, eval_kernel, eval_multiplier, inverse_multiplier
from .exact import ExactScalar
from .quadrature import Integrand, integrate, pv_integral, trunc_disk, trunc_square
from .spectral import GridField, beurling_grid, inverse_beurling_grid
from .maximal import WindowSet, EpsilonSet, hl_maximal, iterate_maximal, bstar_square
from .counterexample import CounterexamplePoint, SectorFunction, counterexample_value

# 实验系统
from .experiments import (
    Experiment,
    ExperimentRegistry,
    ExperimentSuite,
    ParallelEvaluator,
    RunConfig,
    global_registry,
)

__all__ = [
    # 版本信息
    "__version__",
    "__author__",
    "__email__",
    "__description__",

    # 核心组件
    "LabConfig",
    "QuadratureConfig",
    "LabException",
    "DomainError",
    "ConvergenceError",
    "ConfigException",
    "CheckFailure",
    "FormatError",
    "RunManifest",
    "Verdict",

    # 数学层
    "KernelSpec",
    "eval_kernel",
    "eval_multiplier",
    "inverse_multiplier",
    "ExactScalar",
    "Integrand",
    "integrate",
    "pv_integral",
    "trunc_disk",
    "trunc_square",
    "GridField",
    "beurling_grid",
    "inverse_beurling_grid",
    "WindowSet",
    "EpsilonSet",
    "hl_maximal",
    "iterate_maximal",
    "bstar_square",
    "CounterexamplePoint",
    "SectorFunction",
    "counterexample_value",

    # 实验系统
    "Experiment",
    "ExperimentRegistry",
    "ExperimentSuite",
    "ParallelEvaluator",
    "RunConfig",
    "global_registry",
]
