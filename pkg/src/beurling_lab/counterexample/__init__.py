"""反例与扇形函数"""

from .engine import (
    CounterexamplePoint,
    SectorFunction,
    LinearFit,
    counterexample_value,
    counterexample_value_with_error,
    counterexample_ratio,
    counterexample_ratio_m2,
    SectorIntegral,
    theorem_b_integral,
    theorem_b_integral_with_error,
    linear_fit,
    point_config,
)

__all__ = [
    "CounterexamplePoint",
    "SectorFunction",
    "LinearFit",
    "counterexample_value",
    "counterexample_value_with_error",
    "counterexample_ratio",
    "counterexample_ratio_m2",
    "SectorIntegral",
    "theorem_b_integral",
    "theorem_b_integral_with_error",
    "linear_fit",
    "point_config",
]
