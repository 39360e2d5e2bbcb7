"""Converse direction: derivative bounds and scalar Lipschitz extension."""
from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from typing import TYPE_CHECKING

import numpy as np
from scipy.spatial.distance import cdist, pdist

from maxsobolev.core.exceptions import (
    DomainError,
    LipschitzDataError,
    VerificationError,
)
from maxsobolev.core.reports import VerificationReport
from maxsobolev.hajlasz.pairs import sample_pairs, verify_pointwise

if TYPE_CHECKING:
    from numpy.typing import ArrayLike

    from maxsobolev.grid.functions import GridFunction
    from maxsobolev.hajlasz.pairs import PairSample

__all__ = ["McShaneExtension", "derivative_bound_check", "mcshane_extend"]

_logger = logging.getLogger(__name__)

_LIPSCHITZ_RTOL = 1e-12
_KINK_CONTRAST = 8.0


def _kink_cells(values: np.ndarray, h: float) -> np.ndarray:
    second = np.abs(values[2:] - 2 * values[1:-1] + values[:-2])
    padded = np.pad(second, 2, mode="edge")
    neighbours = np.maximum(padded[:-4], padded[4:])
    floor = math.sqrt(h) * float(np.max(np.abs(np.diff(values)), initial=0.0))
    return (second > _KINK_CONTRAST * neighbours) & (second > floor)


def derivative_bound_check(f: GridFunction, g: GridFunction, c: float = 1.0,
                           sample: PairSample | None = None,
                           tolerance: float = 1e-9) -> VerificationReport:
    """Check ``|f'| ≤ 2 c g + τ(h)`` at the interior cells of a 1-D grid.

    The check presumes that ``|f(x) - f(y)| ≤ c |x - y| (g(x) + g(y))`` holds on the
    admissible pairs of ``sample`` and raises otherwise. The derivative is the central
    difference. Cells whose second difference exceeds both eight times the second
    differences two cells away and ``√h max |Δf|`` are treated as kinks and excluded.
    The allowance ``τ(h)`` is ``Λ h`` with ``Λ`` the largest second difference quotient
    over the remaining cells.

    Parameters
    ----------
    f : GridFunction
        One-dimensional field.
    g : GridFunction
        Its Hajłasz gradient.
    c : float, optional
        Constant of the pointwise inequality, by default one.
    sample : PairSample, optional
        Pairs on which the pointwise inequality is confirmed, by default the seeded
        sample of :func:`sample_pairs`.
    tolerance : float, optional
        Relative tolerance of both the precondition and the bound, by default 1e-9.

    Returns
    -------
    VerificationReport
        Report listing the violating and the excluded cell centers.
    """
    domain = f.domain
    if domain.dim != 1:
        raise DomainError(
            f"The derivative bound is one-dimensional, got {domain.dim}D.")
    if domain.resolution[0] < 3:
        raise DomainError("The derivative bound needs at least three cells.")
    if not c > 0:
        raise ValueError(f"The constant must be positive, got {c}.")
    sample = sample_pairs(domain) if sample is None else sample
    precondition = verify_pointwise(f, c * g, sample)
    if precondition.minimal_constant > 1 + tolerance:
        raise VerificationError(
            f"The pointwise inequality fails with constant {c}: the pairs require "
            f"{c * precondition.minimal_constant}.")
    h = float(domain.spacing[0])
    values = f.values
    centers = domain.centers(0)[1:-1]
    kinks = _kink_cells(values, h)
    second = np.abs(values[2:] - 2 * values[1:-1] + values[:-2]) / h ** 2
    residual = float(np.max(second[~kinks], initial=0.0))
    allowance = residual * h
    slope = np.abs(values[2:] - values[:-2]) / (2 * h)
    bound = 2 * c * g.values[1:-1] + allowance
    with np.errstate(divide="ignore", invalid="ignore"):
        ratios = np.where(bound > 0, slope / bound,
                          np.where(slope > 0, math.inf, 0.0))
    ratios[kinks] = 0.0
    bad = np.flatnonzero((slope > bound * (1 + tolerance)) & ~kinks)
    _logger.debug("Derivative bound with τ = %g and %d kink cells.", allowance,
                  int(kinks.sum()))
    return VerificationReport(
        name="derivative bound", passed=bad.size == 0,
        ratio=float(np.max(ratios)),
        constants={"c": c, "tau": allowance, "second_difference": residual,
                   "precondition": precondition.minimal_constant},
        violations=tuple(float(x) for x in centers[bad]),
        exclusions=tuple(float(x) for x in centers[kinks]))


def _as_points(points: ArrayLike) -> np.ndarray:
    points = np.asarray(points, dtype=float)
    if points.ndim == 0:
        points = points.reshape(1, 1)
    elif points.ndim == 1:
        points = points[:, None]
    if points.ndim != 2:  # noqa: PLR2004
        raise ValueError(f"Points must have shape (m, dim), got {points.shape}.")
    return points


@dataclass(frozen=True, eq=False)
class McShaneExtension:
    """Extension ``x ↦ min_i (values[i] + L |x - points[i]|)`` of Lipschitz data.

    Parameters
    ----------
    points : ArrayLike
        Data points, shape ``(m, dim)`` or ``(m,)`` on the line.
    values : ArrayLike
        Data values, shape ``(m,)``.
    lipschitz : float
        Lipschitz constant ``L`` of the data.

    Raises
    ------
    LipschitzDataError
        If the data is not ``L``-Lipschitz; the error names the worst pair.
    """

    points: np.ndarray
    values: np.ndarray
    lipschitz: float
    dim: int = field(init=False)

    def __post_init__(self) -> None:
        points = _as_points(self.points)
        values = np.asarray(self.values, dtype=float).ravel()
        if points.shape[0] == 0 or values.shape != (points.shape[0],):
            raise ValueError(
                f"Got {points.shape[0]} points but {values.size} values.")
        if not self.lipschitz >= 0:
            raise ValueError(
                f"The Lipschitz constant must be nonnegative, got {self.lipschitz}.")
        object.__setattr__(self, "points", points)
        object.__setattr__(self, "values", values)
        object.__setattr__(self, "dim", points.shape[1])
        if points.shape[0] > 1:
            self._check_data()

    def _check_data(self) -> None:
        distances = pdist(self.points)
        jumps = pdist(self.values[:, None], "cityblock")
        excess = jumps - self.lipschitz * distances * (1 + _LIPSCHITZ_RTOL)
        worst = int(np.argmax(excess))
        if excess[worst] > _LIPSCHITZ_RTOL * max(1.0, jumps[worst]):
            i, j = (int(k[worst]) for k in np.triu_indices(self.points.shape[0], 1))
            ratio = jumps[worst] / distances[worst] if distances[worst] else math.inf
            raise LipschitzDataError(i, j, float(ratio), self.lipschitz)

    def __call__(self, x: ArrayLike) -> float | np.ndarray:
        """Evaluate the extension at one point or at an array of points."""
        single = np.ndim(x) == 0 or (np.ndim(x) == 1 and self.dim > 1)
        if np.ndim(x) == 1 and self.dim > 1:
            x = np.asarray(x, dtype=float)[None, :]
        x = _as_points(x)
        if x.shape[1] != self.dim:
            raise ValueError(f"Points of dimension {x.shape[1]} for {self.dim}D data.")
        result = np.min(self.values + self.lipschitz * cdist(x, self.points), axis=1)
        return float(result[0]) if single else result


def mcshane_extend(points: ArrayLike, values: ArrayLike,
                   lipschitz: float) -> McShaneExtension:
    """Extend ``L``-Lipschitz data to an ``L``-Lipschitz function on ℝⁿ.

    Examples
    --------
    >>> f = mcshane_extend([0.0, 1.0], [0.0, 1.0], 1.0)
    >>> f(0.5), f(2.0)
    (0.5, 2.0)
    """
    return McShaneExtension(points, values, lipschitz)
