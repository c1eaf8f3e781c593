"""a_k 的远处衰减

奇数 k：|a_k(z)|·|z|³ 沿二进半径不增。偶数 k：h_k(z) 的主项是 conj(b_k(z))·B^k(χ_{Q₀})(0)，
写出 tail.csv 对照。另有共轭对称行 h_1(z̄) = conj(h_1(z))。
"""

import cmath
import logging
import math
from typing import List, Tuple

from ...core.config import QuadratureConfig
from ...exact import center_value
from ...kernels import KernelSpec, eval_kernel
from ...quadrature import ak_tail
from ..base import Experiment, ExperimentParameter
from ..config import RunConfig
from ..executor import ParallelEvaluator
from ..writer import ResultWriter

logger = logging.getLogger(__name__)

# 两条固定射线
DIRECTIONS = {"pi/6": math.pi / 6.0, "pi/3": math.pi / 3.0}
MONOTONE_SLACK = 1e-6
EVEN_REL_TOL = 0.1
EVEN_CHECK_RADIUS = 16.0
SYMMETRY_POINTS = (5.0 + 0j, 5.0 + 1j)
SYMMETRY_TOL = 1e-9


def point_tolerance(cfg: QuadratureConfig, k: int, modulus: float) -> QuadratureConfig:
    """按 h_k 的量级收紧容差：奇数阶 ~|z|^{-4}，偶数阶 ~|z|^{-2}"""
    power = 4 if k % 2 else 2
    tol = max(1e-14, min(cfg.abs_tol, 1e-4 * modulus ** (-power) / math.pi ** 2))
    return cfg.with_tolerance(tol)


class DecayExperiment(Experiment):
    def __init__(self):
        super().__init__("decay", "a_k(z) 的衰减：奇数阶 |a_k|·|z|³ 不增，偶数阶由中心值项主导")

    def get_parameters(self) -> List[ExperimentParameter]:
        return [
            self.parameter("decay_orders"),
            self.parameter("decay_radii"),
            self.parameter("abs_tol"),
            self.parameter("workers"),
        ]

    def run(self, config: RunConfig, writer: ResultWriter) -> None:
        manifest = writer.manifest
        cfg = config.quadrature()
        radii = sorted(set(config.decay_radii))
        orders = sorted(set(config.decay_orders))
        if radii[0] <= 3.0 or orders[0] < 1:
            manifest.add_verdict("decay_domain", "|z| > 3 且 k ≥ 1", f"radii={radii}, orders={orders}", False)
            return

        keys = [(k, r, name) for k in orders for r in radii for name in DIRECTIONS]

        def evaluate(key: Tuple[int, float, str]) -> complex:
            k, r, name = key
            z = cmath.rect(r, DIRECTIONS[name])
            return ak_tail(k, z, point_tolerance(cfg, k, r))

        with ParallelEvaluator(config.workers) as evaluator:
            values = dict(zip(keys, evaluator.values(evaluate, keys)))

        rows, tail_rows = [], []
        for k in orders:
            for name in sorted(DIRECTIONS):
                scaled = []
                for r in radii:
                    h = values[(k, r, name)]
                    # a_k = −h_k，模长相同
                    rows.append([k, r, name, abs(h), abs(h) * r ** 3])
                    scaled.append(abs(h) * r ** 3)
                    if k % 2 == 0:
                        tail_rows.append(self._tail_row(k, r, name, h))
                if k % 2:
                    monotone = all(b <= a * (1 + MONOTONE_SLACK) for a, b in zip(scaled, scaled[1:]))
                    manifest.add_verdict(
                        f"decay_k{k}_{name}_non_increasing", "non-increasing", scaled, monotone, MONOTONE_SLACK
                    )
            if k % 2 == 0:
                for row in tail_rows:
                    if row[0] == k and row[1] >= EVEN_CHECK_RADIUS:
                        manifest.add_verdict(
                            f"tail_k{k}_r{row[1]:g}_{row[2]}", "rel ≤ 0.1", row[-1], row[-1] <= EVEN_REL_TOL, EVEN_REL_TOL
                        )

        writer.write_csv("decay.csv", ["k", "modulus", "direction", "abs_ak", "scaled"], rows)
        if tail_rows:
            writer.write_csv(
                "tail.csv",
                ["k", "modulus", "direction", "h_re", "h_im", "leading_re", "leading_im", "rel_error"],
                tail_rows,
            )
        self._symmetry(cfg, writer)

    def _tail_row(self, k: int, r: float, name: str, h: complex) -> list:
        z = cmath.rect(r, DIRECTIONS[name])
        leading = eval_kernel(KernelSpec(order=k, direction="inverse"), z) * center_value(k).numeric()
        rel = abs(h - leading) / abs(leading)
        return [k, r, name, h.real, h.imag, leading.real, leading.imag, rel]

    def _symmetry(self, cfg: QuadratureConfig, writer: ResultWriter) -> None:
        """h₁(z̄) = conj(h₁(z))；实轴上的点要求 h₁(5) 为实数"""
        tight = cfg.with_tolerance(1e-12)
        for z in SYMMETRY_POINTS:
            upper = ak_tail(1, z, tight)
            lower = ak_tail(1, z.conjugate(), tight)
            gap = abs(lower - upper.conjugate())
            writer.manifest.add_verdict(
                f"conjugation_symmetry_k1_z{z.real:g}{z.imag:+g}i", upper.conjugate(), lower,
                gap <= SYMMETRY_TOL, SYMMETRY_TOL,
            )
