"""Pair samples and the pointwise Hajłasz inequality."""
from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from typing import TYPE_CHECKING

import numpy as np

from maxsobolev.core.exceptions import DomainError
from maxsobolev.core.reports import HajlaszReport, VerificationReport

if TYPE_CHECKING:
    from collections.abc import Mapping

    from numpy.typing import ArrayLike

    from maxsobolev.grid.domains import BoxDomain
    from maxsobolev.grid.functions import GridFunction

__all__ = [
    "PairSample",
    "absolute_value_check",
    "lipschitz_on_truncation_check",
    "sample_pairs",
    "truncation_sets",
    "verify_pointwise",
]

_logger = logging.getLogger(__name__)

# Minimal constant above which a report flags that no bounded gradient exists.
BLOW_UP_THRESHOLD = 10.0
MAX_VIOLATIONS = 100
_MAX_BATCHES = 64


@dataclass(frozen=True, eq=False)
class PairSample:
    """Pairs of cell centers with their admissibility flags.

    Attributes
    ----------
    domain : BoxDomain
        Grid of the cells.
    x_index, y_index : numpy.ndarray
        Flat indices of the first and second cell of every pair.
    admissible : numpy.ndarray
        Whether ``B(x, 3|x - y|)`` lies in Ω for the pair, or in both orders for a
        symmetric sample.
    meta : Mapping[str, object]
        Seed, count and strategy of the sample.
    """

    domain: BoxDomain
    x_index: np.ndarray
    y_index: np.ndarray
    admissible: np.ndarray
    meta: Mapping[str, object] = field(default_factory=dict)

    def __post_init__(self) -> None:
        if np.any(self.x_index == self.y_index):
            raise DomainError("A pair sample must not contain pairs with x = y.")

    def __len__(self) -> int:
        return int(self.x_index.size)

    @property
    def x(self) -> np.ndarray:
        """Coordinates of the first points, shape ``(len, dim)``."""
        return self.domain.points().reshape(-1, self.domain.dim)[self.x_index]

    @property
    def y(self) -> np.ndarray:
        """Coordinates of the second points, shape ``(len, dim)``."""
        return self.domain.points().reshape(-1, self.domain.dim)[self.y_index]

    @property
    def n_admissible(self) -> int:
        """Number of admissible pairs."""
        return int(np.count_nonzero(self.admissible))


def _omega_bounds(domain: BoxDomain, omega: tuple[ArrayLike, ArrayLike] | None
                  ) -> tuple[np.ndarray, np.ndarray]:
    if omega is None:
        return np.asarray(domain.lower), np.asarray(domain.upper)
    lower, upper = (np.asarray(b, dtype=float) for b in omega)
    if lower.shape != (domain.dim,) or upper.shape != (domain.dim,):
        raise DomainError(f"Ω bounds {omega} do not have dimension {domain.dim}.")
    return lower, upper


def _admissible(points: np.ndarray, xi: np.ndarray, yi: np.ndarray,
                lower: np.ndarray, upper: np.ndarray, symmetric: bool) -> np.ndarray:
    x, y = points[xi], points[yi]
    radius = 3 * np.linalg.norm(x - y, axis=1)[:, None]
    ok = np.all((x - radius >= lower) & (x + radius <= upper), axis=1)
    if symmetric:
        ok &= np.all((y - radius >= lower) & (y + radius <= upper), axis=1)
    return ok


def sample_pairs(domain: BoxDomain, count: int = 10_000, seed: int = 0,
                 nearest: bool = True,
                 omega: tuple[ArrayLike, ArrayLike] | None = None,
                 whole_space: bool = False, symmetric: bool = False) -> PairSample:
    """Sample pairs of cell centers for the pointwise inequality.

    The sample consists of ``count`` uniformly random admissible pairs, drawn by seeded
    rejection sampling among the cells of Ω, and optionally of every pair of cells
    that are neighbours along an axis.

    Parameters
    ----------
    domain : BoxDomain
        Grid of the cells.
    count : int, optional
        Number of random pairs, by default 10⁴.
    seed : int, optional
        Seed of the random generator, by default 0.
    nearest : bool, optional
        Whether to add all nearest-neighbour pairs, by default True.
    omega : tuple[ArrayLike, ArrayLike], optional
        Lower and upper corner of Ω, by default the domain itself.
    whole_space : bool, optional
        Whether every pair is admissible, as for fields on ℝⁿ whose support lies well
        inside the domain, by default False.
    symmetric : bool, optional
        Whether the ball condition must hold around both points, by default False.

    Returns
    -------
    PairSample
        The sample.
    """
    lower, upper = _omega_bounds(domain, omega)
    points = domain.points().reshape(-1, domain.dim)
    inside = np.flatnonzero(np.all((points >= lower) & (points <= upper), axis=1))
    if inside.size < 2:
        raise DomainError("Ω contains fewer than two cell centers.")
    rng = np.random.default_rng(seed)
    xs, ys, found = [], [], 0
    for _ in range(_MAX_BATCHES):
        if found >= count:
            break
        batch = max(8 * (count - found), 64)
        xi = inside[rng.integers(inside.size, size=batch)]
        yi = inside[rng.integers(inside.size, size=batch)]
        keep = xi != yi
        if not whole_space:
            keep &= _admissible(points, xi, yi, lower, upper, symmetric)
        xs.append(xi[keep])
        ys.append(yi[keep])
        found += int(np.count_nonzero(keep))
    if found < count:
        _logger.warning("Only %d of %d admissible random pairs were found.", found,
                        count)
    x_index = np.concatenate(xs)[:count] if xs else np.empty(0, dtype=int)
    y_index = np.concatenate(ys)[:count] if ys else np.empty(0, dtype=int)
    if nearest:
        flat = np.arange(domain.n_cells).reshape(domain.shape)
        inside_mask = np.zeros(domain.n_cells, dtype=bool)
        inside_mask[inside] = True
        for axis in range(domain.dim):
            first = np.delete(flat, -1, axis=axis).ravel()
            second = np.delete(flat, 0, axis=axis).ravel()
            keep = inside_mask[first] & inside_mask[second]
            x_index = np.concatenate([x_index, first[keep]])
            y_index = np.concatenate([y_index, second[keep]])
    if whole_space:
        admissible = np.ones(x_index.size, dtype=bool)
    else:
        admissible = _admissible(points, x_index, y_index, lower, upper, symmetric)
    meta = {"seed": seed, "count": count, "nearest": nearest,
            "whole_space": whole_space, "symmetric": symmetric,
            "strategy": "uniform-admissible" + ("+nearest" if nearest else "")}
    _logger.debug("Sampled %d pairs, %d admissible.", x_index.size,
                  int(np.count_nonzero(admissible)))
    return PairSample(domain, x_index, y_index, admissible, meta)


def _pair_ratios(f: GridFunction, g: GridFunction, sample: PairSample,
                 mask: np.ndarray) -> np.ndarray:
    fx = f.flat[sample.x_index[mask]]
    fy = f.flat[sample.y_index[mask]]
    gx = g.flat[sample.x_index[mask]]
    gy = g.flat[sample.y_index[mask]]
    points = sample.domain.points().reshape(-1, sample.domain.dim)
    dist = np.linalg.norm(points[sample.x_index[mask]] - points[sample.y_index[mask]],
                          axis=1)
    numerator = np.abs(fx - fy)
    denominator = dist * (gx + gy)
    with np.errstate(divide="ignore", invalid="ignore"):
        ratios = numerator / denominator
    ratios[(numerator == 0)] = 0.0
    ratios[(numerator > 0) & (denominator == 0)] = math.inf
    return ratios


def _check_shared(f: GridFunction, g: GridFunction, sample: PairSample) -> None:
    if f.domain != g.domain or f.domain != sample.domain:
        raise DomainError("f, g and the pair sample must share their domain.")


def verify_pointwise(f: GridFunction, g: GridFunction, sample: PairSample,
                     c: float = 1.0) -> HajlaszReport:
    """Check ``|f(x) - f(y)| ≤ c |x - y| (g(x) + g(y))`` on the admissible pairs.

    Parameters
    ----------
    f : GridFunction
        Field.
    g : GridFunction
        Candidate gradient, nonnegative.
    sample : PairSample
        Pairs to check.
    c : float, optional
        Constant for the violation list, by default one.

    Returns
    -------
    HajlaszReport
        The smallest constant for which all admissible pairs satisfy the inequality,
        with ``0/0`` counted as zero, and the pairs exceeding ``c``.
    """
    _check_shared(f, g, sample)
    if np.any(g.values < 0):
        raise DomainError("The candidate gradient must be nonnegative.")
    mask = sample.admissible
    if not mask.any():
        raise DomainError("The pair sample has no admissible pair.")
    ratios = _pair_ratios(f, g, sample, mask)
    worst = int(np.argmax(ratios))
    points = sample.domain.points().reshape(-1, sample.domain.dim)
    xi, yi = sample.x_index[mask], sample.y_index[mask]
    over = np.flatnonzero(ratios > c)
    order = over[np.lexsort((over, -ratios[over]))][:MAX_VIOLATIONS]
    violations = tuple((tuple(points[xi[k]]), tuple(points[yi[k]]), float(ratios[k]))
                       for k in order)
    minimal = float(ratios[worst])
    return HajlaszReport(
        minimal_constant=minimal, n_pairs=len(sample),
        n_admissible=int(ratios.size),
        worst_pair=(tuple(points[xi[worst]]), tuple(points[yi[worst]])),
        violations=violations,
        blow_up=bool(not math.isfinite(minimal) or minimal > BLOW_UP_THRESHOLD),
        sample=dict(sample.meta))


def truncation_sets(g: GridFunction, k: float) -> np.ndarray:
    """Boolean mask of the cells where ``g ≤ k``; the masks are nested in ``k``."""
    if not k > 0:
        raise ValueError(f"The truncation level must be positive, got {k}.")
    return g.values <= k


def lipschitz_on_truncation_check(f: GridFunction, g: GridFunction, k: float,
                                  sample: PairSample, tolerance: float = 1e-12
                                  ) -> VerificationReport:
    """Check that ``f`` is ``2k``-Lipschitz on admissible pairs inside ``{g ≤ k}``."""
    _check_shared(f, g, sample)
    inside = truncation_sets(g, k).ravel()
    mask = sample.admissible & inside[sample.x_index] & inside[sample.y_index]
    if not mask.any():
        return VerificationReport(name="Lipschitz on truncation set", passed=True,
                                  ratio=0.0, constants={"k": k, "pairs": 0})
    points = sample.domain.points().reshape(-1, sample.domain.dim)
    xi, yi = sample.x_index[mask], sample.y_index[mask]
    dist = np.linalg.norm(points[xi] - points[yi], axis=1)
    ratios = np.abs(f.flat[xi] - f.flat[yi]) / (2 * k * dist)
    bad = np.flatnonzero(ratios > 1 + tolerance)[:MAX_VIOLATIONS]
    return VerificationReport(
        name="Lipschitz on truncation set", passed=bad.size == 0,
        ratio=float(np.max(ratios)), constants={"k": k, "pairs": int(mask.sum())},
        violations=tuple((tuple(points[xi[i]]), tuple(points[yi[i]])) for i in bad))


def absolute_value_check(f: GridFunction, g: GridFunction, sample: PairSample,
                         tolerance: float = 1e-12) -> VerificationReport:
    """Check that ``g`` serves ``|f|`` with a constant no larger than for ``f``."""
    report_f = verify_pointwise(f, g, sample)
    report_abs = verify_pointwise(abs(f), g, sample)
    lhs, rhs = report_abs.minimal_constant, report_f.minimal_constant
    ratio = lhs / rhs if rhs > 0 else (0.0 if lhs == 0 else math.inf)
    return VerificationReport(
        name="absolute value", passed=lhs <= rhs * (1 + tolerance), ratio=ratio,
        constants={"f": rhs, "abs_f": lhs})
