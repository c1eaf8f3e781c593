"""精确有理 / π-仿射算术"""

from .scalar import ExactScalar, format_fraction
from .identities import (
    IntegralKey,
    boundary_term,
    int_I,
    ide1_coefficient,
    ide2_coefficient,
    pi_coefficient_closed_form,
    fj_integral,
    center_value,
    coefficient,
    sum_S,
    suma_lhs,
    telescope_step,
    telescope_prefactor,
    e9_printed,
    e9_consistent,
    square_moment,
)

__all__ = [
    "ExactScalar",
    "format_fraction",
    "IntegralKey",
    "boundary_term",
    "int_I",
    "ide1_coefficient",
    "ide2_coefficient",
    "pi_coefficient_closed_form",
    "fj_integral",
    "center_value",
    "coefficient",
    "sum_S",
    "suma_lhs",
    "telescope_step",
    "telescope_prefactor",
    "e9_printed",
    "e9_consistent",
    "square_moment",
]
