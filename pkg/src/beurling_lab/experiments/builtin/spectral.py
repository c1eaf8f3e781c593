"""谱方法自检：χ_{D(0,1)} 的 Beurling 像与闭式 −1/z² 对照"""

import logging
from typing import List

import numpy as np

from ...quadrature import UNIT_DISK, Integrand
from ...spectral import GridField, beurling_grid, inverse_beurling_grid, parseval_defect, sample, write_field
from ..base import Experiment, ExperimentParameter
from ..config import RunConfig
from ..writer import ResultWriter

logger = logging.getLogger(__name__)

PARSEVAL_TOL = 1e-10
INTERIOR_TOL = 0.05
EXTERIOR_TOL = 0.05
POINT_TOL = 0.05
ALGEBRA_TOL = 1e-10
# N 加倍时误差比应在 ½ 的 ±30% 内
CONVERGENCE_RANGE = (0.35, 0.65)
BAND = (1.5, 2.5)


def disk_errors(image: GridField) -> tuple:
    """(|z| < 0.8 内的最大模, 1.2 ≤ |z| ≤ 2 上相对 L² 误差)"""
    z = image.nodes()
    r = np.abs(z)
    interior = r < 0.8
    interior_max = float(np.max(np.abs(image.samples[interior])))
    ring = (r >= 1.2) & (r <= 2.0)
    exact = -1.0 / z[ring] ** 2
    rel = float(np.linalg.norm(image.samples[ring] - exact) / np.linalg.norm(exact))
    return interior_max, rel


def band_max_error(image: GridField, inner: float = BAND[0], outer: float = BAND[1]) -> float:
    """环带 inner ≤ |z| ≤ outer 上相对 −1/z² 的最大误差"""
    z = image.nodes()
    r = np.abs(z)
    band = (r >= inner) & (r <= outer)
    return float(np.max(np.abs(image.samples[band] + 1.0 / z[band] ** 2)))


def disk_convergence(sizes, half_width: float, workers=None) -> List[float]:
    """固定 L、逐个 N 计算 B(χ_D) 的环带最大误差"""
    disk = Integrand.indicator(UNIT_DISK, label="disk")
    return [band_max_error(beurling_grid(1, sample(disk, n, half_width), workers)) for n in sizes]


class SpectralValidateExperiment(Experiment):
    def __init__(self):
        super().__init__("spectral-validate", "Fourier 乘子实现的等距性、内部值与外部闭式")

    def get_parameters(self) -> List[ExperimentParameter]:
        return [
            self.parameter("grid_n"),
            self.parameter("grid_l"),
            self.parameter("convergence_l"),
            self.parameter("export_fields"),
            self.parameter("workers"),
        ]

    def run(self, config: RunConfig, writer: ResultWriter) -> None:
        manifest = writer.manifest
        disk = Integrand.indicator(UNIT_DISK, label="disk")
        sizes = sorted({max(16, config.grid_n // 2), config.grid_n})
        rows = []
        for n in sizes:
            field = sample(disk, n, config.grid_l)
            image = beurling_grid(1, field, config.workers)
            defect = parseval_defect(1, field, config.workers)
            interior_max, exterior_rel = disk_errors(image)
            rows.append([n, config.grid_l, defect, interior_max, exterior_rel])
            logger.info("N=%d: Parseval %.3e, 内部 %.4f, 外部 %.4f", n, defect, interior_max, exterior_rel)
            if n != config.grid_n:
                continue
            manifest.add_verdict("parseval_defect", 0, defect, defect <= PARSEVAL_TOL, PARSEVAL_TOL)
            manifest.add_verdict("interior_max", 0, interior_max, interior_max <= INTERIOR_TOL, INTERIOR_TOL)
            manifest.add_verdict("exterior_rel_l2", 0, exterior_rel, exterior_rel <= EXTERIOR_TOL, EXTERIOR_TOL)

            at_two = complex(image.value_at(2.0 + 0j))
            rel = abs(at_two + 0.25) / 0.25
            manifest.add_verdict("value_near_2", -0.25, at_two.real, rel <= POINT_TOL, POINT_TOL)

            centered = field.samples - field.mean()
            back = inverse_beurling_grid(1, image, config.workers)
            round_trip = float(np.max(np.abs(back.samples - centered)))
            manifest.add_verdict("round_trip", 0, round_trip, round_trip <= ALGEBRA_TOL, ALGEBRA_TOL)
            twice = beurling_grid(1, image, config.workers)
            once = beurling_grid(2, field, config.workers)
            composition = float(np.max(np.abs(twice.samples - once.samples)))
            manifest.add_verdict("multiplicativity", 0, composition, composition <= ALGEBRA_TOL, ALGEBRA_TOL)

            if config.export_fields:
                name = f"beurling_disk_n{n}.bgf"
                write_field(writer.run_dir / name, image)
                manifest.add_artifact(name)

        writer.write_csv(
            "spectral.csv", ["N", "L", "parseval_defect", "interior_max_err", "exterior_rel_l2_err"], rows
        )
        self._convergence(config, writer)

    def _convergence(self, config: RunConfig, writer: ResultWriter) -> None:
        coarse, fine = max(16, config.grid_n // 2), config.grid_n
        errors = disk_convergence((coarse, fine), config.convergence_l, config.workers)
        ratio = errors[1] / errors[0]
        logger.info("环带误差 N=%d: %.4e, N=%d: %.4e, 比值 %.3f", coarse, errors[0], fine, errors[1], ratio)
        low, high = CONVERGENCE_RANGE
        writer.manifest.add_verdict(
            f"exterior_convergence_n{coarse}_n{fine}", "≈ 0.5", ratio, low <= ratio <= high, CONVERGENCE_RANGE
        )
        writer.write_csv(
            "spectral_convergence.csv",
            ["N", "L", "band_max_err"],
            [[n, config.convergence_l, e] for n, e in zip((coarse, fine), errors)],
        )
