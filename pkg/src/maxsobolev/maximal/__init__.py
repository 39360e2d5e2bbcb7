"""Centered Hardy-Littlewood maximal operators."""

__all__ = [
    "DEFAULT_RATIO", "MaximalConfig", "radius_grid",
    "ball_maximal", "comparability_check", "cube_maximal", "maximal_at",
    "maximal_field",
]

from maxsobolev.maximal.config import DEFAULT_RATIO, MaximalConfig, radius_grid
from maxsobolev.maximal.kernels import (
    ball_maximal,
    comparability_check,
    cube_maximal,
    maximal_at,
    maximal_field,
)
