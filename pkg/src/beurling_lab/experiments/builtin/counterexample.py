"""k = 1 反例：B*_S f / M(Bf) 沿 z = α(1+i) 随 log|z| 增长"""

import logging
import math
from typing import List

from ...counterexample import (
    CounterexamplePoint,
    counterexample_ratio,
    counterexample_ratio_m2,
    counterexample_value_with_error,
    linear_fit,
    point_config,
)
from ...maximal import EpsilonSet, bstar_square, square_indicator_maximal
from ...quadrature import inverse_square_integrand, tail_correction
from ..base import Experiment, ExperimentParameter
from ..config import RunConfig
from ..executor import ParallelEvaluator
from ..writer import ResultWriter, gnuplot_script

logger = logging.getLogger(__name__)

MIN_R_SQUARED = 0.95
MIN_GROWTH = 1.5
LOG_RATIO_SPREAD = 2.0
M2_SPREAD = 3.0
REFINEMENT_TOL = 1e-6
TAIL_TOL = 0.01
SYMMETRY_TOL = 1e-6


class CounterexampleExperiment(Experiment):
    def __init__(self):
        super().__init__("counterexample", "正方形截断反例：比值 |T f(z)|/M(χ_Q0)(z) 的对数增长")

    def get_parameters(self) -> List[ExperimentParameter]:
        return [
            self.parameter("alphas"),
            self.parameter("m_cutoff"),
            self.parameter("abs_tol"),
            self.parameter("max_depth"),
            self.parameter("outer_radius_factor"),
            self.parameter("with_m2"),
            self.parameter("workers"),
        ]

    def run(self, config: RunConfig, writer: ResultWriter) -> None:
        manifest = writer.manifest
        cfg = config.quadrature()
        alphas = sorted(set(config.alphas))
        points = {a: CounterexamplePoint(alpha=a, m=config.m_cutoff) for a in alphas}

        with ParallelEvaluator(config.workers) as evaluator:
            results = evaluator.values(lambda a: counterexample_value_with_error(points[a], cfg), alphas)
            m2_values = (
                evaluator.values(lambda a: counterexample_ratio_m2(points[a], cfg), alphas)
                if config.with_m2 else []
            )

        rows, ratios, logs = [], [], []
        for alpha, result in zip(alphas, results):
            pt = points[alpha]
            value = result.value
            m_exact = square_indicator_maximal(pt.z)
            ratio = abs(value) / m_exact
            log_modulus = math.log(pt.modulus)
            rows.append([alpha, pt.modulus, value.real, value.imag, abs(value), m_exact, ratio, log_modulus])
            ratios.append(ratio)
            logs.append(log_modulus)
            manifest.add_verdict(
                f"m_closed_form_a{alpha:g}", 1.0 / (alpha + 1.0) ** 2, m_exact,
                abs(m_exact * (alpha + 1.0) ** 2 - 1.0) <= 1e-12, 1e-12,
            )

        writer.write_csv(
            "counterexample.csv",
            ["alpha", "modulus", "value_re", "value_im", "abs_value", "M_exact", "ratio", "log_modulus"],
            rows,
        )
        writer.write_text(
            "counterexample.gp",
            gnuplot_script("counterexample.csv", 8, 7, "ratio vs log|z|", "log|z|", "ratio"),
        )
        self._growth_verdicts(manifest, alphas, ratios, logs)
        if m2_values:
            spread = max(m2_values) / min(m2_values)
            writer.write_csv(
                "counterexample_m2.csv", ["alpha", "ratio_m2"], [[a, v] for a, v in zip(alphas, m2_values)]
            )
            manifest.add_verdict("m2_ratio_bounded", f"max/min ≤ {M2_SPREAD}", spread, spread <= M2_SPREAD, M2_SPREAD)
        self._stability_verdicts(manifest, points[alphas[0]], points[alphas[-1]], results[0].value, cfg)

    def _growth_verdicts(self, manifest, alphas, ratios, logs) -> None:
        increasing = all(b > a for a, b in zip(ratios, ratios[1:]))
        manifest.add_verdict("ratio_strictly_increasing", "strictly increasing", ratios, increasing)
        if len(ratios) >= 2:
            growth = ratios[-1] / ratios[0]
            manifest.add_verdict("ratio_growth", f"≥ {MIN_GROWTH}", growth, growth >= MIN_GROWTH, MIN_GROWTH)
            fit = linear_fit(logs, ratios)
            manifest.summary.update(
                {"fit_slope": fit.slope, "fit_intercept": fit.intercept, "fit_r_squared": fit.r_squared}
            )
            manifest.add_verdict("fit_slope_positive", "> 0", fit.slope, fit.slope > 0)
            manifest.add_verdict("fit_r_squared", f"≥ {MIN_R_SQUARED}", fit.r_squared, fit.r_squared >= MIN_R_SQUARED)
            normalized = [r / math.log(a * math.sqrt(2.0)) for r, a in zip(ratios, alphas)]
            spread = max(normalized) / min(normalized)
            manifest.summary["empirical_constant"] = min(normalized)
            manifest.add_verdict("ratio_over_log", f"max/min ≤ {LOG_RATIO_SPREAD}", spread, spread <= LOG_RATIO_SPREAD)

    def _stability_verdicts(self, manifest, first: CounterexamplePoint, last: CounterexamplePoint, value, cfg) -> None:
        # 加深求积并收紧容差
        refined_cfg = cfg.with_tolerance(cfg.abs_tol / 4.0, max_depth=2 * cfg.max_depth)
        refined = counterexample_value_with_error(first, refined_cfg).value
        rel = abs(refined - value) / abs(value)
        manifest.add_verdict(f"refinement_a{first.alpha:g}", value, refined, rel <= REFINEMENT_TOL, REFINEMENT_TOL)

        # 外截断半径 20|z| → 40|z|
        for pt in {first.alpha: first, last.alpha: last}.values():
            base = counterexample_value_with_error(pt, cfg).value if pt is last else value
            wide = counterexample_value_with_error(pt, cfg, outer_factor=2.0 * cfg.outer_radius_factor).value
            rel = abs(wide - base) / abs(base)
            manifest.add_verdict(f"tail_certification_a{pt.alpha:g}", base, wide, rel <= TAIL_TOL, TAIL_TOL)

        # 共轭反射不变
        ratio = counterexample_ratio(first, cfg)
        mirrored = counterexample_ratio(first, cfg, reflected=True)
        manifest.add_verdict(
            "reflection_invariance", ratio, mirrored, abs(mirrored - ratio) <= SYMMETRY_TOL * ratio, SYMMETRY_TOL
        )

        # 截断积分被 B*_S 控制
        f = inverse_square_integrand()
        scaled = point_config(first, cfg)
        radius = cfg.outer_radius_factor * first.modulus
        eps_set = EpsilonSet(levels=(first.eps, 1.5 * first.eps))
        bstar = bstar_square(1, f, first.z, eps_set, scaled, outer_radius=radius)
        body = abs(value - tail_correction(radius, first.z))
        manifest.add_verdict("bstar_dominates", f"≥ {body}", bstar, bstar >= body * (1 - 1e-9))
