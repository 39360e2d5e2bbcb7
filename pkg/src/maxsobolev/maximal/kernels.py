"""Centered Hardy-Littlewood maximal operators on grid functions.

Two evaluation paths are provided. The brute-force path averages over Euclidean balls
by convolving with the ball's cell mask and serves as the reference. The fast path
averages over axis cubes with prefix sums. Since ``B(x, r) ⊂ Q(x, r) ⊂ B(x, r√n)``,
both are comparable up to the volume ratios checked by :func:`comparability_check`,
and in one dimension they coincide.
"""
from __future__ import annotations

import logging
import math
from typing import TYPE_CHECKING

import numpy as np
from scipy.signal import convolve

from maxsobolev.core.exceptions import DomainError
from maxsobolev.core.reports import VerificationReport
from maxsobolev.grid.functions import GridFunction, window_sums
from maxsobolev.maximal.config import MaximalConfig
from maxsobolev.utilities.utilities import unit_ball_volume

if TYPE_CHECKING:
    from numpy.typing import ArrayLike

    from maxsobolev.grid.domains import BoxDomain

__all__ = [
    "ball_maximal",
    "comparability_check",
    "cube_maximal",
    "maximal_at",
    "maximal_field",
]

_logger = logging.getLogger(__name__)

_RTOL = 1e-12
_FACE_TOL = 1e-6


def _absolute_values(g: GridFunction) -> np.ndarray:
    if not np.isfinite(g.values).all():
        raise DomainError("The maximal function of a non-finite field is not "
                          "supported.")
    return np.abs(g.values)


def _check_radii(radii: ArrayLike) -> np.ndarray:
    radii = np.asarray(radii, dtype=float)
    if radii.size == 0:
        raise ValueError("The radius grid is empty.")
    return radii


def _half_extents(domain: BoxDomain, radius: float) -> list[int]:
    return [min(int(math.floor(radius * (1 + _RTOL) / h)), n - 1)
            for h, n in zip(domain.spacing, domain.resolution)]


def _ball_mask(domain: BoxDomain, radius: float) -> np.ndarray:
    extents = _half_extents(domain, radius)
    offsets = [np.arange(-m, m + 1) * h for m, h in zip(extents, domain.spacing)]
    sq = sum(np.meshgrid(*(o ** 2 for o in offsets), indexing="ij"))
    return (np.sqrt(sq) <= radius * (1 + _RTOL)).astype(float)


def _running_max(best: np.ndarray | None, candidate: np.ndarray) -> np.ndarray:
    # Strict comparison keeps the smallest maximizing radius.
    if best is None:
        return candidate
    return np.where(candidate > best, candidate, best)


def ball_maximal(g: GridFunction, radii: ArrayLike) -> np.ndarray:
    """Maximal averages over Euclidean balls, by convolution with ball masks.

    Parameters
    ----------
    g : GridFunction
        Field whose absolute value is averaged; it is extended by zero.
    radii : ArrayLike
        Radii of the balls.

    Returns
    -------
    numpy.ndarray
        ``max_r |B(x, r)|^{-1} Σ_{c ∈ B(x, r)} |g(c)| |cell|`` at every cell center.
    """
    values = _absolute_values(g)
    radii = _check_radii(radii)
    domain = g.domain
    omega = unit_ball_volume(domain.dim)
    method = "direct" if domain.dim == 1 else "fft"
    best = None
    for radius in radii:
        sums = convolve(values, _ball_mask(domain, radius), mode="same", method=method)
        if method == "fft":
            sums = np.maximum(sums, 0.0)
        volume = omega * radius ** domain.dim
        best = _running_max(best, sums * domain.cell_volume / volume)
    _logger.debug("Ball maximal function over %d radii on %s.", radii.size, domain)
    return best


def cube_maximal(g: GridFunction, radii: ArrayLike) -> np.ndarray:
    """Maximal averages over axis cubes of half-width ``r``, by prefix sums.

    The cube of half-width ``r`` around a cell holds the cells whose centers are at
    most ``r`` away along every axis, and its average divides by ``(2r)^n``.
    """
    values = _absolute_values(g)
    radii = _check_radii(radii)
    domain = g.domain
    best = None
    for radius in radii:
        extents = _half_extents(domain, radius)
        sums = window_sums(values, [-m for m in extents], extents)
        volume = (2 * radius) ** domain.dim
        best = _running_max(best, sums * domain.cell_volume / volume)
    _logger.debug("Cube maximal function over %d radii on %s.", radii.size, domain)
    return best


def maximal_field(g: GridFunction, cfg: MaximalConfig | None = None) -> GridFunction:
    """Truncated centered maximal function ``M_t |g|`` at every cell center.

    Parameters
    ----------
    g : GridFunction
        Field, extended by zero outside its domain.
    cfg : MaximalConfig, optional
        Truncation, radius grid and window shape, by default the untruncated cube
        operator on the default radius grid.

    Returns
    -------
    GridFunction
        The maximal function.
    """
    cfg = MaximalConfig() if cfg is None else cfg
    radii = cfg.radii_for(g.domain)
    if cfg.window_shape == "ball":
        values = ball_maximal(g, radii)
    else:
        values = cube_maximal(g, radii)
    return GridFunction(g.domain, values)


def _sweep_line(values: np.ndarray, domain: BoxDomain, x: float, t: float
                ) -> float:
    h = float(domain.spacing[0])
    faces = domain.lower[0] + h * np.arange(values.size + 1)
    mass = np.concatenate(([0.0], np.cumsum(values) * h))
    padded = np.concatenate(([0.0], values, [0.0]))
    position = (x - domain.lower[0]) / h
    face = round(position)
    if abs(position - face) <= _FACE_TOL:
        limit = (padded[face] + padded[face + 1]) / 2
    else:
        limit = padded[int(math.floor(position)) + 1]
    # The covered mass is linear between face distances, so the average is monotone
    # there and its supremum sits at r -> 0, at a face distance or at t.
    radii = np.unique(np.abs(faces - x))
    radii = radii[(radii > _FACE_TOL * h) & (radii <= t)]
    if math.isfinite(t) and t > _FACE_TOL * h:
        radii = np.append(radii, t)
    covered = np.interp(x + radii, faces, mass) - np.interp(x - radii, faces, mass)
    averages = np.concatenate(([limit], covered / (2 * radii)))
    return float(averages[int(np.argmax(averages))])


def _sweep_lattice(values: np.ndarray, domain: BoxDomain, x: np.ndarray, t: float
                   ) -> float:
    dist = np.linalg.norm(domain.points().reshape(-1, domain.dim) - x, axis=1)
    order = np.argsort(dist, kind="stable")
    dist = dist[order]
    partial = np.concatenate(([0.0], np.cumsum(values[order])))
    tol = _RTOL * float(np.max(domain.spacing))
    radii = dist[np.concatenate(([True], np.diff(dist) > tol))]
    radii = radii[radii <= t + tol]
    if math.isfinite(t) and (radii.size == 0 or radii[-1] < t - tol):
        radii = np.append(radii, t)
    inside = np.searchsorted(dist, radii - tol, side="left")
    closed = np.searchsorted(dist, radii + tol, side="right")
    # Centers on the sphere count half.
    weights = (inside + closed) / 2
    sums = (partial[inside] + partial[closed]) / 2
    volumes = unit_ball_volume(domain.dim) * radii ** domain.dim / domain.cell_volume
    cells = np.maximum(volumes, weights)
    averages = np.divide(sums, cells, out=np.zeros_like(sums), where=cells > 0)
    return float(averages[int(np.argmax(averages))])


def maximal_at(g: GridFunction, x: ArrayLike, cfg: MaximalConfig | None = None
               ) -> float:
    """Maximal function over balls at a single point by an exact radius sweep.

    Every radius in ``(0, t]`` is considered, not only the radius grid. In one
    dimension the ball averages integrate the piecewise constant field exactly. In
    higher dimensions a ball covers the cells whose centers lie inside it, centers on
    the sphere count half, and the average divides by the larger of the ball volume
    and the covered cell volume, so that it never exceeds ``max |g|``.

    Parameters
    ----------
    g : GridFunction
        Field, extended by zero outside its domain.
    x : ArrayLike
        Point in the domain.
    cfg : MaximalConfig, optional
        Truncation ``t``; the radius grid and the window shape are ignored.

    Returns
    -------
    float
        ``sup_{0<r≤t}`` of the ball averages of ``|g|`` around ``x``.
    """
    cfg = MaximalConfig() if cfg is None else cfg
    domain = g.domain
    x = np.asarray(x, dtype=float)
    if not domain.contains(x):
        raise DomainError(f"Point {tuple(x)} lies outside the domain.")
    values = _absolute_values(g).ravel()
    if domain.dim == 1:
        return _sweep_line(values, domain, float(x[0]), cfg.truncation)
    return _sweep_lattice(values, domain, x, cfg.truncation)


def comparability_check(g: GridFunction, cfg: MaximalConfig | None = None,
                        tolerance: float = 1e-9) -> VerificationReport:
    """Compare the ball and cube maximal functions pointwise.

    Checks ``M^ball ≤ (2^n/ω_n) M^cube`` on the configured radii and
    ``M^cube ≤ (ω_n n^{n/2}/2^n) M^ball`` where the balls use the radii scaled by
    ``√n``.

    Parameters
    ----------
    g : GridFunction
        Field to compare on.
    cfg : MaximalConfig, optional
        Radius grid of the comparison.
    tolerance : float, optional
        Relative tolerance for rounding, by default 1e-9.

    Returns
    -------
    VerificationReport
        Report with the worst ratio of both inequalities and the cell indices that
        violate them.
    """
    cfg = MaximalConfig() if cfg is None else cfg
    n = g.domain.dim
    omega = unit_ball_volume(n)
    radii = _check_radii(cfg.radii_for(g.domain))
    ball = ball_maximal(g, radii)
    cube = cube_maximal(g, radii)
    ball_scaled = ball if n == 1 else ball_maximal(g, radii * math.sqrt(n))
    slack = tolerance * max(float(np.max(np.abs(g.values))), 1.0)
    upper = [(ball, 2 ** n / omega * cube),
             (cube, omega * n ** (n / 2) / 2 ** n * ball_scaled)]
    ratios, violations = [], []
    for lhs, rhs in upper:
        with np.errstate(divide="ignore", invalid="ignore"):
            ratio = np.where(lhs > 0, lhs / rhs, 0.0)
        ratios.append(float(np.max(ratio)))
        bad = np.argwhere(lhs > rhs * (1 + tolerance) + slack)
        violations.extend(tuple(int(i) for i in idx) for idx in bad[:20])
    constants = {"ball_over_cube": ratios[0], "cube_over_ball": ratios[1],
                 "max_abs_difference": float(np.max(np.abs(ball - cube)))}
    return VerificationReport(
        name="ball-cube comparability", passed=not violations,
        ratio=max(ratios), constants=constants, violations=tuple(violations))
