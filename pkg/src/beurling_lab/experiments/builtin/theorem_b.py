"""偶数阶的扇形函数：左端随 log R 无界，而 M^j G(0) ≤ 1"""

import logging
import math
from typing import List, Tuple

from ...counterexample import SectorFunction, SectorIntegral, theorem_b_integral_with_error
from ...maximal import WindowSet, iterate_maximal
from ...spectral import sample
from ..base import Experiment, ExperimentParameter
from ..config import RunConfig
from ..executor import ParallelEvaluator
from ..writer import ResultWriter

logger = logging.getLogger(__name__)

REFERENCE_TOL = 0.02
THRESHOLDS = (1.0, 2.0, 4.0)
QUOTIENT_TARGET = 4.0
GRID_CHECK_N = 256


class TheoremBExperiment(Experiment):
    def __init__(self):
        super().__init__("theorem-b", "扇形函数 G_R：积分按 √3·log(R/3) 增长，M^j 上界恒为 1")

    def get_parameters(self) -> List[ExperimentParameter]:
        return [
            self.parameter("sector_orders"),
            self.parameter("radii"),
            self.parameter("iterations"),
            self.parameter("abs_tol"),
            self.parameter("workers"),
        ]

    def run(self, config: RunConfig, writer: ResultWriter) -> None:
        manifest = writer.manifest
        cfg = config.quadrature()
        orders = sorted(set(config.sector_orders))
        radii = sorted(set(config.radii))
        try:
            sectors = {(k, r): SectorFunction(k=k, outer_radius=r) for k in orders for r in radii}
        except ValueError as exc:
            manifest.add_verdict("sector_parameters", "偶数 k 且 R > 3", str(exc), False)
            return

        keys = sorted(sectors)

        def evaluate(key: Tuple[int, float]) -> SectorIntegral:
            return theorem_b_integral_with_error(sectors[key], config.iterations, cfg)

        with ParallelEvaluator(config.workers) as evaluator:
            results = dict(zip(keys, evaluator.values(evaluate, keys)))

        rows = []
        errors = []
        for k in orders:
            reals = []
            for r in radii:
                result = results[(k, r)]
                integral = result.value
                rows.append([k, r, integral.real, integral.imag, result.bound, result.quotient])
                errors.append([k, r, result.error, result.iterations])
                reals.append(integral.real)
                reference = sectors[(k, r)].reference_integral()
                rel = abs(integral.real - reference) / reference
                manifest.add_verdict(
                    f"integral_error_k{k}_R{r:g}", f"≤ {REFERENCE_TOL * reference:.3g}", result.error,
                    result.error <= REFERENCE_TOL * reference,
                )
                manifest.add_verdict(f"reference_k{k}_R{r:g}", reference, integral.real, rel <= REFERENCE_TOL, REFERENCE_TOL)

            manifest.add_verdict(
                f"increasing_k{k}", "strictly increasing", reals, all(b > a for a, b in zip(reals, reals[1:]))
            )
            for threshold in THRESHOLDS:
                manifest.add_verdict(
                    f"exceeds_{threshold:g}_k{k}", f"> {threshold:g}", max(reals), max(reals) > threshold
                )
            top = results[(k, radii[-1])]
            manifest.add_verdict(
                f"quotient_k{k}_R{radii[-1]:g}", f"> {QUOTIENT_TARGET:g}", top.quotient,
                top.quotient > QUOTIENT_TARGET,
            )
            if 30.0 in radii and 300.0 in radii:
                ratio = results[(k, 300.0)].value.real / results[(k, 30.0)].value.real
                expected = math.log(100.0) / math.log(10.0)
                manifest.add_verdict(f"log_ratio_k{k}", expected, ratio, abs(ratio - expected) <= 0.1 * expected, 0.1)

        writer.write_csv("theoremb.csv", ["k", "R", "integral_re", "integral_im", "bound_Mj", "quotient"], rows)
        writer.write_csv("theoremb_errors.csv", ["k", "R", "integral_err", "j_max"], errors)
        self._maximal_bound(config, writer, sectors[keys[0]])

    def _maximal_bound(self, config: RunConfig, writer: ResultWriter, sector: SectorFunction) -> None:
        """在网格上验证 M^j G(0) ≤ 1"""
        half_width = 1.25 * sector.outer_radius
        field = sample(sector, GRID_CHECK_N, half_width)
        windows = WindowSet.for_grid(field)
        value = float(iterate_maximal(field, windows, config.iterations).value_at(0j))
        writer.manifest.add_verdict(
            f"maximal_bound_j{config.iterations}", "≤ 1", value, value <= 1.0 + 1e-12
        )
