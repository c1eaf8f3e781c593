"""网格场与谱方法"""

from .grid import GridField, sample, node_grid, raised_cosine_taper, write_field, read_field
from .transforms import beurling_grid, inverse_beurling_grid, frequency_lattice, parseval_defect

__all__ = [
    "GridField",
    "sample",
    "node_grid",
    "raised_cosine_taper",
    "write_field",
    "read_field",
    "beurling_grid",
    "inverse_beurling_grid",
    "frequency_lattice",
    "parseval_defect",
]
