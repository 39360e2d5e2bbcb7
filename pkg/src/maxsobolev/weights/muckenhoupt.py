"""Estimation of Muckenhoupt A_q constants over families of axis cubes."""
from __future__ import annotations

import itertools
import logging
import math
from dataclasses import dataclass
from typing import TYPE_CHECKING

import numpy as np

from maxsobolev.core.exceptions import DivergentEstimateError, DomainError
from maxsobolev.core.reports import MuckenhouptEstimate, VerificationReport
from maxsobolev.utilities.utilities import parallel_map
from maxsobolev.weights.spec import Weight, sample_weight

if TYPE_CHECKING:
    from collections.abc import Sequence

    from numpy.typing import ArrayLike

    from maxsobolev.grid.domains import BoxDomain

__all__ = [
    "CubeFamily",
    "aq_box_value",
    "aq_constant",
    "aq_properties_check",
    "find_power_improvement",
    "find_self_improvement",
    "grandizer_exponent_search",
]

_logger = logging.getLogger(__name__)

# Per-level growth factor that flags an estimate as divergent.
GROWTH_FACTOR = 2.0


@dataclass(frozen=True)
class CubeFamily:
    """Search family of axis cubes aligned with the cell faces.

    The cube centers form a lattice of cell faces with step ``center_step`` cells that
    always contains the face nearest to the center of the domain. Every center is
    combined with every half-width; cubes that are not fully inside the domain are
    discarded.

    Parameters
    ----------
    center_step : int, optional
        Lattice step in cells, by default ``max(1, N // 32)`` per axis.
    half_widths : Sequence[int], optional
        Half-widths in cells of the smallest spacing, by default ``1, 2, 4, ...`` up
        to half the number of cells.
    """

    center_step: int | None = None
    half_widths: tuple[int, ...] | None = None

    def __post_init__(self) -> None:
        if self.center_step is not None and self.center_step < 1:
            raise ValueError(f"Center step must be positive, got {self.center_step}.")
        if self.half_widths is not None:
            widths = tuple(sorted({int(m) for m in self.half_widths}))
            if not widths or widths[0] < 1:
                raise ValueError(f"Half-widths must be positive integers, got "
                                 f"{self.half_widths}.")
            object.__setattr__(self, "half_widths", widths)

    def centers_for(self, domain: BoxDomain) -> list[np.ndarray]:
        """Face indices of the cube centers per axis."""
        centers = []
        for n in domain.resolution:
            step = self.center_step or max(1, n // 32)
            centers.append(np.arange((n // 2) % step, n + 1, step))
        return centers

    def half_widths_for(self, domain: BoxDomain) -> tuple[int, ...]:
        """Half-widths in cells of the smallest spacing."""
        if self.half_widths is not None:
            return self.half_widths
        largest = max(1, min(domain.resolution) // 2)
        return tuple(2 ** k for k in range(int(math.log2(largest)) + 1))

    def extents(self, domain: BoxDomain, half_width: int) -> list[int]:
        """Half-extent in cells per axis of a cube with the given half-width."""
        h = domain.min_spacing
        return [max(1, round(half_width * h / hk)) for hk in domain.spacing]


def _integral_image(values: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    infinite = np.isinf(values)
    images = []
    for array in (np.where(infinite, 0.0, values), infinite.astype(float)):
        for axis in range(array.ndim):
            array = np.cumsum(array, axis=axis)
        images.append(np.pad(array, [(1, 0)] * array.ndim))
    return images[0], images[1]


def _box_sums(image: np.ndarray, lower: Sequence[np.ndarray],
              upper: Sequence[np.ndarray]) -> np.ndarray:
    ndim = image.ndim
    total = 0.0
    for corner in itertools.product((0, 1), repeat=ndim):
        index = [upper[k] if c else lower[k] for k, c in enumerate(corner)]
        total = total + (-1) ** (ndim - sum(corner)) * image[np.ix_(*index)]
    return total


class _CubeAverages:
    """Averages of a sampled field over boxes of cells, using integral images."""

    def __init__(self, values: np.ndarray) -> None:
        self.image, self.inf_image = _integral_image(values)

    def __call__(self, lower: Sequence[np.ndarray], upper: Sequence[np.ndarray]
                 ) -> np.ndarray:
        cells = 1.0
        for lo, u in zip(lower, upper):
            cells = np.multiply.outer(cells, (u - lo).astype(float))
        sums = _box_sums(self.image, lower, upper) / cells
        infinite = _box_sums(self.inf_image, lower, upper) > 0.5
        return np.where(infinite, math.inf, sums)


def _aq_expression(avg_w: np.ndarray, avg_v: np.ndarray, q: float) -> np.ndarray:
    with np.errstate(over="ignore", invalid="ignore"):
        value = avg_w * avg_v ** (q - 1)
    return np.where(np.isinf(avg_w) | np.isinf(avg_v), math.inf, value)


def _dual_weight(w: Weight, q: float) -> Weight:
    return w.power(-1 / (q - 1))


def _check_q(q: float) -> float:
    q = float(q)
    if not q > 1:
        raise ValueError(f"The exponent q must exceed 1, got {q}.")
    return q


def aq_constant(w: Weight, q: float, domain: BoxDomain,
                family: CubeFamily | None = None) -> MuckenhouptEstimate:
    """Estimate ``[w]_{A_q}`` as the maximum over a family of interior cubes.

    Every cube contributes ``(avg w) (avg w^{-1/(q-1)})^{q-1}``. The estimate is flagged
    divergent if some average is infinite, or if the per-half-width maxima at the three
    finest half-widths grow by a factor of at least two each as the cubes shrink.

    Parameters
    ----------
    w : WeightSpec | CompositeWeight
        Weight to estimate the constant of.
    q : float
        Exponent of the class, larger than one.
    domain : BoxDomain
        Grid used for the quadrature; only cubes inside it are searched.
    family : CubeFamily, optional
        Search family, by default :class:`CubeFamily`'s defaults.

    Returns
    -------
    MuckenhouptEstimate
        The estimate with its maximizing cube.

    Raises
    ------
    DomainError
        If no cube of the family lies inside the domain.
    """
    q = _check_q(q)
    family = CubeFamily() if family is None else family
    w_avg = _CubeAverages(sample_weight(w, domain).values)
    v_avg = _CubeAverages(sample_weight(_dual_weight(w, q), domain).values)
    centers = family.centers_for(domain)
    h = domain.min_spacing
    best, best_center, best_width = -math.inf, (), 0.0
    widths, maxima = [], []
    for m in family.half_widths_for(domain):
        extents = family.extents(domain, m)
        admissible = [c[(c - e >= 0) & (c + e <= n)]
                      for c, e, n in zip(centers, extents, domain.resolution)]
        if any(a.size == 0 for a in admissible):
            continue
        lower = [a - e for a, e in zip(admissible, extents)]
        upper = [a + e for a, e in zip(admissible, extents)]
        values = _aq_expression(w_avg(lower, upper), v_avg(lower, upper), q)
        index = np.unravel_index(int(np.argmax(values)), values.shape)
        level_max = float(values[index])
        widths.append(m * h)
        maxima.append(level_max)
        if level_max > best:
            best = level_max
            best_center = tuple(
                float(domain.lower[k] + admissible[k][i] * domain.spacing[k])
                for k, i in enumerate(index))
            best_width = m * h
    if not maxima:
        raise DomainError(f"No cube of {family} lies inside the domain.")
    divergent = not math.isfinite(best)
    if len(maxima) >= 3:
        m0, m1, m2 = maxima[:3]
        divergent |= m0 >= GROWTH_FACTOR * m1 and m1 >= GROWTH_FACTOR * m2
    n_centers = int(np.prod([c.size for c in centers]))
    _logger.debug("A_%g search over %d centers and %d half-widths: %g%s.", q,
                  n_centers, len(widths), best, " (divergent)" if divergent else "")
    return MuckenhouptEstimate(
        q=q, value=best, divergent=bool(divergent), argmax_center=best_center,
        argmax_half_width=best_width, centers=n_centers, half_widths=tuple(widths),
        level_maxima=tuple(maxima))


def aq_box_value(w: Weight, q: float, domain: BoxDomain, lower: ArrayLike,
                 upper: ArrayLike) -> float:
    """The A_q expression ``(avg w)(avg w^{-1/(q-1)})^{q-1}`` on a single box."""
    q = _check_q(q)
    slices = domain.snap(lower, upper)
    avg_w = float(np.mean(sample_weight(w, domain).values[slices]))
    avg_v = float(np.mean(sample_weight(_dual_weight(w, q), domain).values[slices]))
    return float(_aq_expression(np.asarray(avg_w), np.asarray(avg_v), q))


def _require_finite(estimate: MuckenhouptEstimate, what: str) -> None:
    if not estimate.finite:
        raise DivergentEstimateError(
            f"The A_{estimate.q:g} estimate of {what} diverges (value "
            f"{estimate.value}).")


def aq_properties_check(w: Weight, q: float, p: float, alpha: float,
                        domain: BoxDomain, family: CubeFamily | None = None,
                        tolerance: float = 1e-9) -> VerificationReport:
    """Check the elementary properties of the A_q constant on one cube family.

    The checked properties are ``[w]_{A_p} ≤ [w]_{A_q}`` for ``p > q``,
    ``[w]_{A_q} ≥ 1`` and ``[w^α]_{A_q} ≤ [w]_{A_q}^α`` for ``α ∈ [0, 1]``.
    """
    if not p > q:
        raise ValueError(f"p must exceed q, got p={p} and q={q}.")
    if not 0 <= alpha <= 1:
        raise ValueError(f"alpha must lie in [0, 1], got {alpha}.")
    family = CubeFamily() if family is None else family
    aq = aq_constant(w, q, domain, family)
    ap = aq_constant(w, p, domain, family)
    aa = aq_constant(w.power(alpha), q, domain, family)
    for estimate, what in ((aq, "w"), (ap, "w"), (aa, f"w^{alpha:g}")):
        _require_finite(estimate, what)
    checks = {
        "inclusion": ap.value <= aq.value * (1 + tolerance),
        "lower_bound": aq.value >= 1 - tolerance,
        "power": aa.value <= aq.value ** alpha + tolerance,
    }
    ratio = max(ap.value / aq.value, 1 / aq.value, aa.value / aq.value ** alpha)
    return VerificationReport(
        name="A_q properties", passed=all(checks.values()), ratio=ratio,
        constants={"aq": aq.value, "ap": ap.value, "aq_power": aa.value},
        violations=tuple(name for name, ok in checks.items() if not ok))


def _largest_prefix(grid: Sequence[float], passes: Sequence[bool]) -> float | None:
    result = None
    for value, ok in zip(grid, passes):
        if not ok:
            break
        result = float(value)
    return result


def _interior_grid(upper: float, count: int = 64) -> np.ndarray:
    return upper * np.arange(1, count + 1) / (count + 1)


def find_self_improvement(w: Weight, q: float, domain: BoxDomain,
                          sigma_grid: ArrayLike | None = None,
                          family: CubeFamily | None = None) -> float | None:
    """Largest ``σ`` on a grid such that ``w ∈ A_{q-σ}`` numerically.

    The grid is scanned upwards and the scan stops at the first ``σ`` whose estimate
    is infinite or divergent.

    Parameters
    ----------
    w : WeightSpec | CompositeWeight
        Weight with a finite ``[w]_{A_q}`` estimate.
    q : float
        Exponent of the class.
    domain : BoxDomain
        Grid of the cube search.
    sigma_grid : ArrayLike, optional
        Candidate values in ``(0, q - 1)``, by default 64 equidistant interior points.
    family : CubeFamily, optional
        Search family.

    Returns
    -------
    float | None
        The largest surviving ``σ``, or None if already the smallest one fails.
    """
    q = _check_q(q)
    _require_finite(aq_constant(w, q, domain, family), "w")
    grid = _interior_grid(q - 1) if sigma_grid is None else np.sort(
        np.asarray(sigma_grid, dtype=float))
    if np.any((grid <= 0) | (grid >= q - 1)):
        raise ValueError(f"σ values must lie in (0, {q - 1}).")
    estimates = parallel_map(lambda s: aq_constant(w, q - s, domain, family), grid)
    return _largest_prefix(grid, [e.finite for e in estimates])


def find_power_improvement(w: Weight, q: float, domain: BoxDomain,
                           alpha_grid: ArrayLike | None = None,
                           family: CubeFamily | None = None) -> float | None:
    """Largest ``α > 1`` on a grid such that ``w^α ∈ A_q`` numerically.

    The default grid is ``1 + k/16`` for ``k = 1, ..., 32``.
    """
    q = _check_q(q)
    _require_finite(aq_constant(w, q, domain, family), "w")
    grid = 1 + np.arange(1, 33) / 16 if alpha_grid is None else np.sort(
        np.asarray(alpha_grid, dtype=float))
    if np.any(grid <= 1):
        raise ValueError("α values must exceed 1.")
    estimates = parallel_map(lambda a: aq_constant(w.power(a), q, domain, family),
                             grid)
    return _largest_prefix(grid, [e.finite for e in estimates])


def grandizer_exponent_search(w: Weight, a: Weight, q: float, delta: float,
                              domain: BoxDomain, eps_grid: ArrayLike | None = None,
                              family: CubeFamily | None = None
                              ) -> tuple[float, MuckenhouptEstimate]:
    """Find ``ε ∈ (0, δ)`` minimizing the estimate of ``[w a^ε]_{A_{q-ε}}``.

    A ``δ ≥ q - 1`` is lowered to ``0.99 (q - 1)``. The search requires finite
    estimates of ``[w]_{A_q}`` and ``[a^δ]_{A_q}``.

    Parameters
    ----------
    w : WeightSpec | CompositeWeight
        Weight of the grand space.
    a : WeightSpec | CompositeWeight
        Grandizer.
    q : float
        Exponent of the grand space.
    delta : float
        Exponent with ``a^δ ∈ A_q``.
    domain : BoxDomain
        Grid of the cube search.
    eps_grid : ArrayLike, optional
        Candidates in ``(0, δ)``, by default 64 equidistant interior points.
    family : CubeFamily, optional
        Search family.

    Returns
    -------
    tuple[float, MuckenhouptEstimate]
        The minimizing ``ε`` and the estimate of ``[w a^ε]_{A_{q-ε}}``.
    """
    q = _check_q(q)
    if not delta > 0:
        raise ValueError(f"δ must be positive, got {delta}.")
    if delta >= q - 1:
        _logger.info("Lowering δ=%g below q-1=%g.", delta, q - 1)
        delta = 0.99 * (q - 1)
    _require_finite(aq_constant(w, q, domain, family), "w")
    _require_finite(aq_constant(a.power(delta), q, domain, family), f"a^{delta:g}")
    grid = _interior_grid(delta) if eps_grid is None else np.asarray(
        eps_grid, dtype=float)
    if np.any((grid <= 0) | (grid >= delta)):
        raise ValueError(f"ε values must lie in (0, {delta}).")
    estimates = parallel_map(
        lambda e: aq_constant(w * a.power(e), q - e, domain, family), grid)
    best = None
    for eps, estimate in zip(grid, estimates):
        if estimate.finite and (best is None or estimate.value < best[1].value):
            best = (float(eps), estimate)
    if best is None:
        raise DivergentEstimateError(
            "No ε in the grid gives a finite estimate of [w a^ε]_(A_(q-ε)).")
    return best
