"""Module containing utilities for testing."""

from __future__ import annotations

import warnings
from contextlib import contextmanager
from typing import TYPE_CHECKING

import numpy as np

from maxsobolev.core.exceptions import DegenerateBallWarning, EndpointSupremumWarning
from maxsobolev.grid.domains import Ball

__all__ = ["brute_force_maximal", "brute_force_pairs", "ignore_numerical_warnings"]

if TYPE_CHECKING:
    from collections.abc import Generator

    from numpy.typing import ArrayLike

    from maxsobolev.grid.functions import GridFunction


def brute_force_maximal(g: GridFunction, x: ArrayLike, radii: ArrayLike) -> float:
    """Maximal function over balls at ``x`` by summing the covered cells per radius."""
    points = g.domain.points().reshape(-1, g.domain.dim)
    dist = np.linalg.norm(points - np.asarray(x, dtype=float), axis=1)
    values = np.abs(g.flat)
    best = 0.0
    for r in np.asarray(radii, dtype=float):
        total = np.sum(values[dist <= r * (1 + 1e-12)]) * g.domain.cell_volume
        best = max(best, total / Ball(x, r).volume)
    return best


def brute_force_pairs(f: GridFunction, g: GridFunction) -> float:
    """Minimal Hajłasz constant over all pairs of cells of a small 1-D grid."""
    x = f.domain.centers(0)
    dist = np.abs(x[:, None] - x[None, :])
    numerator = np.abs(f.values[:, None] - f.values[None, :])
    denominator = dist * (g.values[:, None] + g.values[None, :])
    with np.errstate(divide="ignore", invalid="ignore"):
        ratios = np.where(numerator == 0, 0.0, numerator / denominator)
    return float(np.max(ratios[dist > 0]))


@contextmanager
def ignore_numerical_warnings() -> Generator[None, None, None]:
    """Ignore the warnings for degenerate balls and endpoint suprema."""
    with warnings.catch_warnings():
        warnings.filterwarnings("ignore", category=DegenerateBallWarning)
        warnings.filterwarnings("ignore", category=EndpointSupremumWarning)
        yield
