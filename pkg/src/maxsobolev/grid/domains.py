"""Box domains and balls."""
from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from typing import TYPE_CHECKING

import numpy as np

from maxsobolev.core.exceptions import BudgetError, DomainError
from maxsobolev.utilities.utilities import cell_budget, unit_ball_volume

if TYPE_CHECKING:
    from collections.abc import Sequence

    from numpy.typing import ArrayLike

__all__ = ["Ball", "BoxDomain"]

_logger = logging.getLogger(__name__)

# Relative slack on ball membership, absorbing rounding of radii snapped to the grid.
MEMBERSHIP_RTOL = 1e-12


def _as_float_tuple(values: ArrayLike) -> tuple[float, ...]:
    return tuple(float(v) for v in np.atleast_1d(np.asarray(values, dtype=float)))


@dataclass(frozen=True)
class Ball:
    """Closed Euclidean ball ``B(center, radius)``."""

    center: tuple[float, ...]
    radius: float

    def __post_init__(self) -> None:
        object.__setattr__(self, "center", _as_float_tuple(self.center))
        object.__setattr__(self, "radius", float(self.radius))
        if not self.radius > 0:
            raise DomainError(f"Ball radius must be positive, got {self.radius}.")

    @property
    def dim(self) -> int:
        """Dimension of the ambient space."""
        return len(self.center)

    @property
    def volume(self) -> float:
        """Exact volume ω_n r^n of the ball."""
        return unit_ball_volume(self.dim) * self.radius ** self.dim

    def contains(self, points: ArrayLike) -> np.ndarray:
        """Return a boolean mask of the points, shape ``(..., dim)``, in the ball."""
        points = np.asarray(points, dtype=float)
        dist = np.linalg.norm(points - np.asarray(self.center), axis=-1)
        return dist <= self.radius * (1 + MEMBERSHIP_RTOL)


@dataclass(frozen=True)
class BoxDomain:
    """Axis-aligned box discretized by a uniform grid of cells.

    Parameters
    ----------
    lower : Sequence[float]
        Lower corner of the box.
    upper : Sequence[float]
        Upper corner of the box.
    resolution : Sequence[int] | int
        Number of cells per axis. A single integer is used for every axis.
    budget : int, optional
        Maximum number of cells, by default :func:`maxsobolev.utilities.cell_budget`.

    Examples
    --------
    >>> domain = BoxDomain((0.0,), (1.0,), 4)
    >>> domain.centers(0)
    array([0.125, 0.375, 0.625, 0.875])
    """

    lower: tuple[float, ...]
    upper: tuple[float, ...]
    resolution: tuple[int, ...]
    budget: int | None = field(default=None, compare=False, repr=False)

    def __post_init__(self) -> None:
        lower, upper = _as_float_tuple(self.lower), _as_float_tuple(self.upper)
        if len(lower) != len(upper):
            raise DomainError(f"Lower corner {lower} and upper corner {upper} differ "
                              f"in dimension.")
        if len(lower) not in (1, 2, 3):
            raise DomainError(f"Only dimensions 1, 2 and 3 are supported, got "
                              f"{len(lower)}.")
        resolution = np.atleast_1d(np.asarray(self.resolution))
        if resolution.size == 1:
            resolution = np.repeat(resolution, len(lower))
        if resolution.size != len(lower):
            raise DomainError(f"Resolution {tuple(resolution)} does not match "
                              f"dimension {len(lower)}.")
        if not np.all(np.equal(np.mod(resolution, 1), 0)) or np.any(resolution < 1):
            raise DomainError(f"Resolution must consist of positive integers, got "
                              f"{tuple(resolution)}.")
        resolution = tuple(int(r) for r in resolution)
        for axis, (lo, hi) in enumerate(zip(lower, upper)):
            if not (math.isfinite(lo) and math.isfinite(hi) and lo < hi):
                raise DomainError(f"Axis {axis} has bounds ({lo}, {hi}), but lower "
                                  f"must be smaller than upper.")
        object.__setattr__(self, "lower", lower)
        object.__setattr__(self, "upper", upper)
        object.__setattr__(self, "resolution", resolution)
        budget = cell_budget() if self.budget is None else int(self.budget)
        if math.prod(resolution) > budget:
            raise BudgetError(f"Grid of {math.prod(resolution)} cells exceeds the "
                              f"budget of {budget} cells.")

    @classmethod
    def cube(cls, lower: float, upper: float, resolution: int, dim: int = 1,
             **kwargs: object) -> BoxDomain:
        """Create the box ``[lower, upper]^dim`` with the same resolution per axis."""
        return cls((lower,) * dim, (upper,) * dim, (resolution,) * dim, **kwargs)

    def refine(self, factor: int = 2) -> BoxDomain:
        """Return the same box with ``factor`` times as many cells per axis."""
        return BoxDomain(self.lower, self.upper,
                         tuple(r * factor for r in self.resolution), self.budget)

    @property
    def dim(self) -> int:
        """Dimension of the box."""
        return len(self.lower)

    @property
    def shape(self) -> tuple[int, ...]:
        """Shape of the arrays of cell values."""
        return self.resolution

    @property
    def n_cells(self) -> int:
        """Total number of cells."""
        return math.prod(self.resolution)

    @property
    def spacing(self) -> np.ndarray:
        """Cell width per axis."""
        return (np.asarray(self.upper) - np.asarray(self.lower)) / np.asarray(
            self.resolution)

    @property
    def min_spacing(self) -> float:
        """Smallest cell width."""
        return float(np.min(self.spacing))

    @property
    def cell_volume(self) -> float:
        """Volume of a single cell."""
        return float(np.prod(self.spacing))

    @property
    def volume(self) -> float:
        """Volume |Ω| as the cell count times the cell volume."""
        return self.n_cells * self.cell_volume

    @property
    def diameter(self) -> float:
        """Euclidean diameter of the box."""
        return float(np.linalg.norm(np.asarray(self.upper) - np.asarray(self.lower)))

    @property
    def center(self) -> tuple[float, ...]:
        """Midpoint of the box."""
        return tuple((lo + hi) / 2 for lo, hi in zip(self.lower, self.upper))

    def centers(self, axis: int) -> np.ndarray:
        """Cell center coordinates along an axis."""
        h = self.spacing[axis]
        return self.lower[axis] + (np.arange(self.resolution[axis]) + 0.5) * h

    def mesh(self) -> tuple[np.ndarray, ...]:
        """Coordinate arrays of all cell centers, in ``ij`` indexing."""
        return tuple(np.meshgrid(*(self.centers(k) for k in range(self.dim)),
                                 indexing="ij"))

    def points(self) -> np.ndarray:
        """Cell centers as an array of shape ``(*shape, dim)``."""
        return np.stack(self.mesh(), axis=-1)

    def contains(self, x: ArrayLike) -> bool:
        """Whether the point lies in the closed box."""
        x = np.asarray(x, dtype=float)
        if x.shape != (self.dim,):
            raise DomainError(f"Point {x} does not have dimension {self.dim}.")
        return bool(np.all(x >= self.lower) and np.all(x <= self.upper))

    def contains_ball(self, ball: Ball) -> bool:
        """Whether the closed ball lies in the closed box."""
        c = np.asarray(ball.center)
        return bool(np.all(c - ball.radius >= self.lower)
                    and np.all(c + ball.radius <= self.upper))

    def inscribed_ball(self) -> Ball:
        """Largest ball centered at the midpoint of the box."""
        half = (np.asarray(self.upper) - np.asarray(self.lower)) / 2
        return Ball(self.center, float(np.min(half)))

    def locate(self, x: ArrayLike) -> tuple[int, ...]:
        """Index of the cell containing the point ``x``."""
        if not self.contains(x):
            raise DomainError(f"Point {tuple(np.asarray(x))} lies outside the domain "
                              f"{self.lower} to {self.upper}.")
        idx = np.floor((np.asarray(x, dtype=float) - self.lower) / self.spacing)
        return tuple(int(i) for i in np.clip(idx, 0, np.asarray(self.resolution) - 1))

    def cell_center(self, index: Sequence[int]) -> np.ndarray:
        """Coordinates of the center of the cell with the given index."""
        return np.asarray(self.lower) + (np.asarray(index) + 0.5) * self.spacing

    def ball_window(self, ball: Ball) -> tuple[tuple[slice, ...], np.ndarray]:
        """Return the cells whose centers lie in a ball.

        Parameters
        ----------
        ball : Ball
            Ball of the same dimension as the domain.

        Returns
        -------
        tuple[slice, ...]
            Slices of the bounding index box of the ball, clipped to the grid.
        numpy.ndarray
            Boolean membership mask on that index box.
        """
        if ball.dim != self.dim:
            raise DomainError(f"Ball of dimension {ball.dim} used in a domain of "
                              f"dimension {self.dim}.")
        radius = ball.radius * (1 + MEMBERSHIP_RTOL)
        slices = []
        for k in range(self.dim):
            h, lo = self.spacing[k], self.lower[k]
            start = math.ceil((ball.center[k] - radius - lo) / h - 0.5)
            stop = math.floor((ball.center[k] + radius - lo) / h - 0.5) + 1
            slices.append(slice(max(start, 0), min(max(stop, 0), self.resolution[k])))
        axes = [self.centers(k)[s] - ball.center[k] for k, s in enumerate(slices)]
        sq = sum(np.meshgrid(*(a ** 2 for a in axes), indexing="ij"))
        return tuple(slices), np.sqrt(sq) <= radius

    def snap(self, lower: ArrayLike, upper: ArrayLike) -> tuple[slice, ...]:
        """Index slices of the cells whose centers lie in the box ``[lower, upper]``."""
        lower, upper = _as_float_tuple(lower), _as_float_tuple(upper)
        if len(lower) != self.dim or len(upper) != self.dim:
            raise DomainError(f"Sub-box {lower} to {upper} does not have dimension "
                              f"{self.dim}.")
        slices = []
        for k in range(self.dim):
            h, lo = self.spacing[k], self.lower[k]
            start = max(math.ceil((lower[k] - lo) / h - 0.5 - 1e-9), 0)
            stop = min(math.floor((upper[k] - lo) / h - 0.5 + 1e-9) + 1,
                       self.resolution[k])
            if stop <= start:
                raise DomainError(f"Sub-box {lower} to {upper} contains no cell "
                                  f"center along axis {k}.")
            slices.append(slice(start, stop))
        return tuple(slices)

    def subdomain(self, slices: Sequence[slice]) -> BoxDomain:
        """Box formed by the cells selected by index slices, snapped to cell faces."""
        h = self.spacing
        lower = [self.lower[k] + s.start * h[k] for k, s in enumerate(slices)]
        upper = [self.lower[k] + s.stop * h[k] for k, s in enumerate(slices)]
        return BoxDomain(lower, upper, [s.stop - s.start for s in slices], self.budget)
