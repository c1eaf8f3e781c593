"""实验系统"""

from .base import Experiment, ExperimentParameter
from .config import SUBCOMMANDS, RunConfig, load_run_config, parse_assignments, read_config_file
from .executor import ParallelEvaluator, TaskOutcome
from .registry import ExperimentRegistry, global_registry
from .suite import ExperimentSuite
from .writer import ResultWriter, format_cell, gnuplot_script, make_run_id, render_csv

__all__ = [
    # 基础
    "Experiment",
    "ExperimentParameter",
    "ExperimentRegistry",
    "global_registry",
    "ExperimentSuite",

    # 配置
    "SUBCOMMANDS",
    "RunConfig",
    "load_run_config",
    "parse_assignments",
    "read_config_file",

    # 并行与输出
    "ParallelEvaluator",
    "TaskOutcome",
    "ResultWriter",
    "format_cell",
    "render_csv",
    "make_run_id",
    "gnuplot_script",
]
