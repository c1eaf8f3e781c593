"""极大算子：Hardy–Littlewood M、M^j 与正方形截断的 B*_S"""

from .hardy_littlewood import (
    WindowSet,
    EpsilonSet,
    hl_maximal,
    iterate_maximal,
    interior_mask,
    maximal_at,
    square_indicator_maximal,
    iterated_square_indicator,
)
from .truncated import (
    CotlarField,
    RATIO_FLOOR,
    bstar_square,
    bstar_square_grid,
    cotlar_ratio_field,
    cotlar_battery,
    exclusion_radius,
)

__all__ = [
    "WindowSet",
    "EpsilonSet",
    "hl_maximal",
    "iterate_maximal",
    "interior_mask",
    "maximal_at",
    "square_indicator_maximal",
    "iterated_square_indicator",
    "CotlarField",
    "RATIO_FLOOR",
    "bstar_square",
    "bstar_square_grid",
    "cotlar_ratio_field",
    "cotlar_battery",
    "exclusion_radius",
]
