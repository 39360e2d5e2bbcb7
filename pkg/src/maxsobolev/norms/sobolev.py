"""Sobolev and grand Sobolev norms in their sup and sum forms."""
from __future__ import annotations

import logging
from typing import TYPE_CHECKING

import numpy as np

from maxsobolev.core.reports import VerificationReport
from maxsobolev.grid.functions import gradient_magnitude
from maxsobolev.norms.lebesgue import (
    EpsilonGrid,
    EpsilonProfile,
    grand_norm,
    lq_norm,
    maximize_profile,
)

if TYPE_CHECKING:
    from maxsobolev.core.reports import GrandNormResult
    from maxsobolev.grid.functions import GridFunction

__all__ = [
    "equivalence_check",
    "grand_sobolev_profiles",
    "grand_sobolev_sum",
    "grand_sobolev_sup",
    "sobolev_norm",
]

_logger = logging.getLogger(__name__)

INNER_FORMS = ("power-sum", "plain-sum")


def sobolev_norm(f: GridFunction, q: float, w: GridFunction | None = None) -> float:
    """Weighted Sobolev norm ``||f||_{L^q(w)} + || |∇f| ||_{L^q(w)}``."""
    return lq_norm(f, q, w) + lq_norm(gradient_magnitude(f), q, w)


def _combine(values: np.ndarray, gradients: np.ndarray, eps: np.ndarray, q: float,
             inner: str) -> np.ndarray:
    if inner == "plain-sum":
        return values + gradients
    p = q - eps
    return (values ** p + gradients ** p) ** (1 / p)


def _check_inner(inner: str) -> None:
    if inner not in INNER_FORMS:
        raise ValueError(f"Inner norm must be one of {INNER_FORMS}, got {inner!r}.")


def grand_sobolev_profiles(f: GridFunction, q: float, w: GridFunction | None = None,
                           a: GridFunction | None = None,
                           eps_grid: EpsilonGrid | None = None,
                           inner: str = "power-sum", normalize: bool = False,
                           ) -> tuple[GrandNormResult, GrandNormResult,
                                      GrandNormResult]:
    """Sup-form norm and the grand norms of ``f`` and ``|∇f|`` on one shared ε grid.

    No refinement takes place, so the three profiles share their ε values and any
    comparison between them is exact algebra on the same numbers.

    Returns
    -------
    tuple[GrandNormResult, GrandNormResult, GrandNormResult]
        The sup-form grand Sobolev norm, the grand norm of ``f`` and the grand norm of
        ``|∇f|``.
    """
    _check_inner(inner)
    eps_grid = EpsilonGrid(q) if eps_grid is None else eps_grid
    eps = eps_grid.eps
    profile = EpsilonProfile([f, gradient_magnitude(f)], q, w, a, normalize)
    values, gradients = profile(eps)
    combined = _combine(values, gradients, eps, float(q), inner)
    return (maximize_profile(eps, combined, float(q)),
            maximize_profile(eps, values, float(q)),
            maximize_profile(eps, gradients, float(q)))


def grand_sobolev_sup(f: GridFunction, q: float, w: GridFunction | None = None,
                      a: GridFunction | None = None,
                      eps_grid: EpsilonGrid | None = None, inner: str = "power-sum",
                      refine: bool = True, normalize: bool = False
                      ) -> GrandNormResult:
    """Sup-form grand Sobolev norm.

    The norm is the supremum over ε of ``ε^{1/(q-ε)}`` times the inner Sobolev norm
    with exponent ``q - ε`` and weight ``w a^ε``. The inner norm is the power sum
    ``(||f||^{q-ε} + ||∇f||^{q-ε})^{1/(q-ε)}`` by default, or the plain sum
    ``||f|| + ||∇f||`` with ``inner="plain-sum"``.

    Parameters
    ----------
    f : GridFunction
        Field with at least three cells per axis.
    q : float
        Exponent, larger than one.
    w, a : GridFunction, optional
        Weight and grandizer, by default one.
    eps_grid : EpsilonGrid, optional
        Grid of ε values, by default 2048 uniform points.
    inner : str, optional
        ``"power-sum"`` or ``"plain-sum"``.
    refine : bool, optional
        Whether to refine an interior grid maximum.
    normalize : bool, optional
        Whether to divide the integrals by ``|Ω|``.

    Returns
    -------
    GrandNormResult
        The norm with its ε-profile.
    """
    _check_inner(inner)
    eps_grid = EpsilonGrid(q) if eps_grid is None else eps_grid
    profile = EpsilonProfile([f, gradient_magnitude(f)], q, w, a, normalize)

    def evaluate(eps: np.ndarray) -> np.ndarray:
        eps = np.atleast_1d(eps)
        values, gradients = profile(eps)
        return _combine(values, gradients, eps, float(q), inner)

    eps = eps_grid.eps
    return maximize_profile(eps, evaluate(eps), float(q),
                            (lambda e: float(evaluate(e)[0])) if refine else None)


def grand_sobolev_sum(f: GridFunction, q: float, w: GridFunction | None = None,
                      a: GridFunction | None = None,
                      eps_grid: EpsilonGrid | None = None, refine: bool = True,
                      normalize: bool = False) -> float:
    """Sum-form grand Sobolev norm, the grand norm of ``f`` plus that of ``|∇f|``."""
    return (grand_norm(f, q, w, a, eps_grid, refine, normalize).value
            + grand_norm(gradient_magnitude(f), q, w, a, eps_grid, refine,
                         normalize).value)


def equivalence_check(f: GridFunction, q: float, w: GridFunction | None = None,
                      a: GridFunction | None = None,
                      eps_grid: EpsilonGrid | None = None,
                      inner: str = "power-sum",
                      tolerance: float = 1e-12) -> VerificationReport:
    """Check ``sum/4 ≤ sup ≤ sum`` for the two grand Sobolev norms.

    Both norms are assembled from the same unrefined profiles, see
    :func:`grand_sobolev_profiles`.
    """
    sup, values, gradients = grand_sobolev_profiles(f, q, w, a, eps_grid, inner)
    for result in (values, gradients):
        if not np.array_equal(result.eps, sup.eps):
            raise ValueError("The grand norms were computed on different ε grids.")
    total = values.value + gradients.value
    lower_ok = 0.25 * total <= sup.value * (1 + tolerance)
    upper_ok = sup.value <= total * (1 + tolerance)
    ratio = sup.value / total if total > 0 else 0.0
    return VerificationReport(
        name="grand Sobolev norm equivalence", passed=bool(lower_ok and upper_ok),
        ratio=ratio,
        constants={"sup": sup.value, "sum": total, "argmax_eps": sup.argmax_eps},
        violations=tuple(name for name, ok in (("lower", lower_ok),
                                               ("upper", upper_ok)) if not ok))
