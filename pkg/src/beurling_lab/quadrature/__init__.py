"""二维自适应求积、主值积分与截断变换"""

from .regions import (
    Region,
    Rectangle,
    Disk,
    AnnularSector,
    Difference,
    Union,
    Intersection,
    UNIT_SQUARE,
    UNIT_DISK,
)
from .integrand import Integrand, FarFieldDecay
from .rules import QuadratureResult, polar_integrate, box_integrate, gauss_legendre
from .operators import (
    integrate,
    integrate_with_error,
    pv_integral,
    pv_integral_with_error,
    trunc_disk,
    trunc_square,
    trunc_square_with_error,
    geometric_split_residual,
    ak_tail,
    ak_tail_with_error,
    outer_radius_for,
)
from .farfield import (
    far_field_f,
    far_field_error_bound,
    rectangle_kernel_integral,
    square_transform,
    inverse_square_f,
    inverse_square_integrand,
    reflected_integrand,
    tail_correction,
)

__all__ = [
    "Region",
    "Rectangle",
    "Disk",
    "AnnularSector",
    "Difference",
    "Union",
    "Intersection",
    "UNIT_SQUARE",
    "UNIT_DISK",
    "Integrand",
    "FarFieldDecay",
    "QuadratureResult",
    "polar_integrate",
    "box_integrate",
    "gauss_legendre",
    "integrate",
    "integrate_with_error",
    "pv_integral",
    "pv_integral_with_error",
    "trunc_disk",
    "trunc_square",
    "trunc_square_with_error",
    "geometric_split_residual",
    "ak_tail",
    "ak_tail_with_error",
    "outer_radius_for",
    "far_field_f",
    "far_field_error_bound",
    "rectangle_kernel_integral",
    "square_transform",
    "inverse_square_f",
    "inverse_square_integrand",
    "reflected_integrand",
    "tail_correction",
]
