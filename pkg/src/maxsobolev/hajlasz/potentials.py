"""Riesz potentials and the pointwise estimates built on them."""
from __future__ import annotations

import logging
import math
from functools import lru_cache
from typing import TYPE_CHECKING

import numpy as np
from scipy.integrate import nquad

from maxsobolev.core.exceptions import DomainError
from maxsobolev.core.reports import VerificationReport
from maxsobolev.grid.catalog import sample
from maxsobolev.grid.domains import Ball
from maxsobolev.grid.functions import GridFunction, gradient_magnitude
from maxsobolev.maximal.config import MaximalConfig
from maxsobolev.maximal.kernels import maximal_at, maximal_field
from maxsobolev.utilities.utilities import parallel_map, unit_ball_volume

if TYPE_CHECKING:
    from collections.abc import Sequence

    from numpy.typing import ArrayLike

    from maxsobolev.grid.catalog import TestFunctionSpec
    from maxsobolev.grid.domains import BoxDomain

__all__ = [
    "hajlasz_constant",
    "hajlasz_gradient",
    "hedberg_check",
    "mean_oscillation_check",
    "poincare_constant",
    "poincare_pointwise_check",
    "riesz_potential",
]

_logger = logging.getLogger(__name__)


def _rectangle_kernel_integral(u: float, v: float) -> float:
    # ∫_0^u ∫_0^v (s² + t²)^{-1/2} dt ds
    if u <= 0 or v <= 0:
        return 0.0
    return u * math.asinh(v / u) + v * math.asinh(u / v)


@lru_cache(maxsize=1024)
def _box_kernel_integral(u: float, v: float, w: float) -> float:
    # ∫ over [0,u]×[0,v]×[0,w] of 1/|y|²
    if u <= 0 or v <= 0 or w <= 0:
        return 0.0
    value, _ = nquad(lambda s, t, r: 1.0 / (s * s + t * t + r * r),
                     [[0, u], [0, v], [0, w]], opts={"limit": 100})
    return float(value)


def singular_cell_integral(domain: BoxDomain, x: ArrayLike) -> float:
    """Integral of ``|x - y|^{1-n}`` over the cell containing ``x``.

    The cell is split at ``x`` into one box per orthant with a corner at ``x``. In one
    dimension the kernel is one, in two dimensions the integral over each rectangle has
    a closed form and in three dimensions it is computed by adaptive quadrature.
    """
    x = np.asarray(x, dtype=float)
    index = np.asarray(domain.locate(x))
    lower = np.asarray(domain.lower) + index * domain.spacing
    sides = [(float(x[k] - lower[k]), float(lower[k] + domain.spacing[k] - x[k]))
             for k in range(domain.dim)]
    if domain.dim == 1:
        return float(domain.spacing[0])
    if domain.dim == 2:
        return sum(_rectangle_kernel_integral(u, v)
                   for u in sides[0] for v in sides[1])
    return sum(_box_kernel_integral(round(u, 15), round(v, 15), round(w, 15))
               for u in sides[0] for v in sides[1] for w in sides[2])


def riesz_potential(g: GridFunction, x: ArrayLike, ball: Ball) -> float:
    """Riesz potential ``∫_B g(y) |x - y|^{1-n} dy`` of a field over a ball.

    The midpoint rule is used over the cells whose centers lie in ``B``, except for
    the cell containing ``x``, which contributes ``g(x)`` times the exact integral of
    the kernel over that cell. The field is extended by zero outside its domain.

    Parameters
    ----------
    g : GridFunction
        Field, typically ``|∇f|``.
    x : ArrayLike
        Pole of the kernel, inside the ball.
    ball : Ball
        Domain of integration.

    Returns
    -------
    float
        The potential.
    """
    domain = g.domain
    x = np.asarray(x, dtype=float)
    if not ball.contains(x):
        raise DomainError(f"Pole {tuple(x)} lies outside {ball}.")
    n = domain.dim
    slices, mask = domain.ball_window(ball)
    values = g.values[slices]
    offsets = np.meshgrid(*(domain.centers(k)[s] - x[k] for k, s in enumerate(slices)),
                          indexing="ij")
    dist = np.sqrt(sum(o ** 2 for o in offsets))
    singular = np.zeros_like(mask)
    if domain.contains(x):
        index = domain.locate(x)
        local = tuple(i - s.start for i, s in zip(index, slices))
        if all(0 <= i < m for i, m in zip(local, mask.shape)) and mask[local]:
            singular[local] = True
    regular = mask & ~singular
    with np.errstate(divide="ignore"):
        kernel = np.where(regular, dist, 1.0) ** (1 - n)
    total = float(np.sum(values[regular] * kernel[regular])) * domain.cell_volume
    if singular.any():
        total += float(values[singular][0]) * singular_cell_integral(domain, x)
    return total


def _cells_in_ball(domain: BoxDomain, ball: Ball) -> np.ndarray:
    slices, mask = domain.ball_window(ball)
    local = np.argwhere(mask)
    return local + np.asarray([s.start for s in slices])


def _ball_mean(f: GridFunction, ball: Ball) -> float:
    slices, mask = f.domain.ball_window(ball)
    return float(np.mean(f.values[slices][mask]))


def poincare_pointwise_check(f: GridFunction, ball: Ball, sample_count: int = 256,
                             seed: int = 0) -> float:
    """Empirical constant of ``|f(x) - f_B| ≤ C ∫_B |∇f(y)| |x - y|^{1-n} dy``.

    ``f_B`` is the mean of ``f`` over the cells whose centers lie in ``B``. The
    inequality is evaluated at the centers of up to ``sample_count`` cells of ``B``,
    all of them if there are fewer, drawn with a seeded generator. Points where both
    sides vanish are skipped.

    Returns
    -------
    float
        The largest ratio over the sampled points, ``inf`` if some point has a
        nonzero left-hand side and a vanishing potential.
    """
    if not f.domain.contains_ball(ball):
        raise DomainError(f"{ball} is not contained in the domain.")
    grad = gradient_magnitude(f)
    cells = _cells_in_ball(f.domain, ball)
    if len(cells) > sample_count:
        rng = np.random.default_rng(seed)
        cells = cells[np.sort(rng.choice(len(cells), sample_count, replace=False))]
    mean = _ball_mean(f, ball)

    def ratio(index: np.ndarray) -> float:
        lhs = abs(f.values[tuple(index)] - mean)
        rhs = riesz_potential(grad, f.domain.cell_center(index), ball)
        if rhs == 0:
            return math.nan if lhs == 0 else math.inf
        return lhs / rhs

    ratios = np.asarray(parallel_map(ratio, list(cells)))
    ratios = ratios[~np.isnan(ratios)]
    return float(np.max(ratios)) if ratios.size else 0.0


def poincare_constant(domain: BoxDomain, catalog: Sequence[TestFunctionSpec],
                      sample_count: int = 256, seed: int = 0) -> float:
    """Largest empirical Poincaré constant over catalog fields on the inscribed ball."""
    ball = domain.inscribed_ball()
    constants = [poincare_pointwise_check(sample(spec, domain), ball, sample_count,
                                          seed) for spec in catalog]
    _logger.info("Poincaré constants over %d fields: max %g.", len(constants),
                 max(constants, default=0.0))
    return max(constants, default=0.0)


def hajlasz_constant(dim: int, poincare: float) -> float:
    """Constant ``3 C 2^{n-1} ω_n`` of the maximal-gradient construction."""
    return 3 * poincare * 2 ** (dim - 1) * unit_ball_volume(dim)


def hajlasz_gradient(f: GridFunction, c: float, cfg: MaximalConfig | None = None
                     ) -> GridFunction:
    """Candidate Hajłasz gradient ``c M(|∇f|)``."""
    if c < 0:
        raise ValueError(f"The constant must be nonnegative, got {c}.")
    return c * maximal_field(gradient_magnitude(f), cfg)


def hedberg_check(f: GridFunction, x: ArrayLike, t: float, slack: float = 0.05,
                  grad: GridFunction | None = None,
                  cfg: MaximalConfig | None = None) -> VerificationReport:
    """Check ``∫_{B(x,t)} |∇f| |x-y|^{1-n} dy ≤ 2^n ω_n t M_t(|∇f|)(x)``.

    Parameters
    ----------
    f : GridFunction
        Field whose gradient is used, ignored if ``grad`` is given.
    x : ArrayLike
        Center of the ball.
    t : float
        Radius of the ball and truncation of the maximal function.
    slack : float, optional
        Relative allowance for quadrature error, by default 0.05.
    grad : GridFunction, optional
        The field ``|∇f|`` itself.
    cfg : MaximalConfig, optional
        Radius grid of the maximal function; its truncation is replaced by ``t``.

    Returns
    -------
    VerificationReport
        Report with the ratio of both sides.
    """
    grad = gradient_magnitude(f) if grad is None else grad
    n = grad.domain.dim
    cfg = MaximalConfig(truncation=t) if cfg is None else cfg.replace(truncation=t)
    lhs = riesz_potential(grad, x, Ball(x, t))
    rhs = 2 ** n * unit_ball_volume(n) * t * maximal_at(grad, x, cfg)
    ratio = lhs / rhs if rhs > 0 else (0.0 if lhs == 0 else math.inf)
    return VerificationReport(
        name="Hedberg estimate", passed=lhs <= (1 + slack) * rhs, ratio=ratio,
        constants={"lhs": lhs, "rhs": rhs, "slack": slack},
        violations=() if lhs <= (1 + slack) * rhs else (tuple(np.asarray(x)),))


def mean_oscillation_check(f: GridFunction, ball: Ball) -> float:
    """Empirical constant of ``∫_B |f - f_B| ≤ C r ∫_B |∇f|``."""
    if not f.domain.contains_ball(ball):
        raise DomainError(f"{ball} is not contained in the domain.")
    slices, mask = f.domain.ball_window(ball)
    values = f.values[slices][mask]
    oscillation = float(np.sum(np.abs(values - np.mean(values))))
    gradient = float(np.sum(gradient_magnitude(f).values[slices][mask]))
    if gradient == 0:
        return 0.0 if oscillation == 0 else math.inf
    return oscillation / (ball.radius * gradient)
