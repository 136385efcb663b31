"""Exact rate/distance geometry of block codes.

Subpackages cover exact plane geometry, block-code parameters, linear
codes over small fields, the parameter-spoiling calculus, certified bound
curves, desk-scale search, and pixel approximations of planar closed sets.
"""

__version__ = "0.1.0"

from .codes import Code, CodeParams, code_point, hamming_distance, min_distance, params
from .geometry import GridBall, RatBall, RatInterval, RatPoint, max_distance

__all__ = [
    "Code",
    "CodeParams",
    "GridBall",
    "RatBall",
    "RatInterval",
    "RatPoint",
    "__version__",
    "code_point",
    "hamming_distance",
    "max_distance",
    "min_distance",
    "params",
]
