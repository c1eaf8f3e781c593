"""中心值 B^k(χ_{Q₀})(0)：奇数阶为零，偶数阶非零"""

import logging
from typing import List, Tuple

from ...exact import center_value
from ...quadrature import UNIT_DISK, UNIT_SQUARE, Difference, Integrand, integrate, pv_integral
from ...kernels import eval_kernel
from ..base import Experiment, ExperimentParameter
from ..config import RunConfig
from ..executor import ParallelEvaluator
from ..writer import ResultWriter

logger = logging.getLogger(__name__)

ODD_TOL = 1e-8
EVEN_TOL = 1e-6


class LemmaExperiment(Experiment):
    def __init__(self):
        super().__init__("lemma", "中心值的奇偶二分：精确值与主值求积对照")

    def get_parameters(self) -> List[ExperimentParameter]:
        return [self.parameter("orders"), self.parameter("abs_tol"), self.parameter("workers")]

    def run(self, config: RunConfig, writer: ResultWriter) -> None:
        manifest = writer.manifest
        cfg = config.quadrature()
        orders = sorted(set(config.orders))
        if any(k < 1 for k in orders):
            manifest.add_verdict("orders_positive", "all k ≥ 1", orders, False)
            return

        def evaluate(k: int) -> Tuple[complex, complex]:
            numeric = pv_integral(k, Integrand.constant(1.0), cfg)
            annulus = integrate(
                Integrand(lambda w: eval_kernel(k, w), label=f"b_{k}"),
                Difference(UNIT_SQUARE, UNIT_DISK),
                cfg,
            )
            return numeric, annulus

        with ParallelEvaluator(config.workers) as evaluator:
            results = evaluator.values(evaluate, orders)

        rows, annulus_rows = [], []
        for k, (numeric, annulus) in zip(orders, results):
            exact = center_value(k)
            diff = abs(numeric - exact.numeric())
            rows.append([k, exact, numeric.real, diff])
            annulus_diff = abs(annulus - exact.numeric())
            annulus_rows.append([k, exact, annulus.real, annulus.imag, annulus_diff])
            if k % 2:
                manifest.add_verdict(f"center_k{k}_exact_zero", 0, exact, exact.is_zero())
                manifest.add_verdict(f"center_k{k}_numeric", 0, abs(numeric), abs(numeric) <= ODD_TOL, ODD_TOL)
            else:
                manifest.add_verdict(f"center_k{k}_exact_nonzero", "≠ 0", exact, not exact.is_zero())
                manifest.add_verdict(f"center_k{k}_numeric", exact.numeric(), numeric.real, diff <= EVEN_TOL, EVEN_TOL)
            # p.v. 在圆盘上为零，所以中心值也等于 Q₀∖D(0,1) 上的普通积分
            manifest.add_verdict(f"annulus_k{k}", exact.numeric(), annulus.real, annulus_diff <= EVEN_TOL, EVEN_TOL)
            logger.info("k=%d: 精确 %s, 数值 %.12g", k, exact, numeric.real)

        writer.write_csv("lemma.csv", ["k", "exact", "numeric", "abs_diff"], rows)
        writer.write_csv("lemma_annulus.csv", ["k", "exact", "annulus_re", "annulus_im", "abs_diff"], annulus_rows)
