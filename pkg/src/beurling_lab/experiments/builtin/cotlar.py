"""Cotlar 型不等式 B*_S f ≤ C·M²(B^k f) 的网格性质检查"""

import logging
import math
from typing import List, Tuple

from ...maximal import CotlarField, cotlar_battery, cotlar_ratio_field
from ...quadrature import Integrand
from ..base import Experiment, ExperimentParameter
from ..config import RunConfig
from ..executor import ParallelEvaluator
from ..writer import ResultWriter

logger = logging.getLogger(__name__)

REFINEMENT_FACTOR = 1.5


class CotlarExperiment(Experiment):
    def __init__(self):
        super().__init__("cotlar", "测试函数组上 B*_S f / M²(B^k f) 的有限性与细化稳定性")

    def get_parameters(self) -> List[ExperimentParameter]:
        return [
            self.parameter("cotlar_orders"),
            self.parameter("cotlar_sizes"),
            self.parameter("cotlar_half_width"),
            self.parameter("seed"),
            self.parameter("workers"),
        ]

    def run(self, config: RunConfig, writer: ResultWriter) -> None:
        manifest = writer.manifest
        battery = cotlar_battery(config.seed)
        orders = sorted(set(config.cotlar_orders))
        sizes = sorted(set(config.cotlar_sizes))
        half_width = config.cotlar_half_width
        keys = [(k, name, n) for k in orders for name in sorted(battery) for n in sizes]

        def evaluate(key: Tuple[int, str, int]) -> CotlarField:
            k, name, n = key
            return cotlar_ratio_field(k, battery[name], n, half_width)

        # FFT 与求和面积表都很吃内存，线程数不超过 2
        with ParallelEvaluator(min(config.workers, 2)) as evaluator:
            fields = dict(zip(keys, evaluator.values(evaluate, keys)))

        rows = []
        for k in orders:
            for name in sorted(battery):
                maxima = []
                for n in sizes:
                    field = fields[(k, name, n)]
                    maxima.append(field.max_ratio())
                    rows.append([
                        k, name, n, field.max_ratio(), field.percentile(99.0),
                        field.flagged_count(), int(field.usable.sum()),
                    ])
                    finite = field.all_flagged or math.isfinite(field.max_ratio())
                    manifest.add_verdict(f"finite_k{k}_{name}_n{n}", "finite", field.max_ratio(), finite)
                usable = [m for m in maxima if math.isfinite(m)]
                if len(usable) >= 2:
                    worst = max(max(a, b) / min(a, b) for a, b in zip(usable, usable[1:]))
                    manifest.add_verdict(
                        f"refinement_k{k}_{name}", f"≤ ×{REFINEMENT_FACTOR}", worst,
                        worst <= REFINEMENT_FACTOR, REFINEMENT_FACTOR,
                    )

        zero = cotlar_ratio_field(orders[0], Integrand.constant(0.0, label="zero"), sizes[0], half_width)
        rows.append([orders[0], "zero", sizes[0], zero.max_ratio(), zero.percentile(99.0), zero.flagged_count(), 0])
        manifest.add_verdict("zero_field_all_flagged", "all flagged", zero.flagged_count(), zero.all_flagged)

        writer.write_csv(
            "cotlar.csv",
            ["k", "function", "n", "max_ratio", "p99_ratio", "flagged", "usable_nodes"],
            rows,
        )
