"""Embedding inequalities between Lebesgue, grand Lebesgue and Sobolev norms.

All comparisons are made on profiles evaluated on one shared ε grid without
refinement, so the compared quantities are computed from the same numbers and a
failure points at a defect rather than at quadrature error.
"""
from __future__ import annotations

import logging
from typing import TYPE_CHECKING

import numpy as np

from maxsobolev.core.exceptions import DomainError
from maxsobolev.core.reports import EmbeddingReport, VerificationReport
from maxsobolev.grid.functions import GridFunction, gradient_magnitude
from maxsobolev.norms.lebesgue import (
    EpsilonGrid,
    EpsilonProfile,
    grand_norm,
    lq_norm,
)
from maxsobolev.norms.sobolev import grand_sobolev_profiles, sobolev_norm
from maxsobolev.weights.muckenhoupt import grandizer_exponent_search
from maxsobolev.weights.spec import as_weight, sample_weight

if TYPE_CHECKING:
    from numpy.typing import ArrayLike

    from maxsobolev.weights.muckenhoupt import CubeFamily
    from maxsobolev.weights.spec import Weight

__all__ = [
    "chain_check",
    "local_integrability_check",
    "local_sobolev_check",
    "sobolev_embedding_check",
    "upper_embedding_check",
]

_logger = logging.getLogger(__name__)


def _unit(f: GridFunction, a: GridFunction | None) -> GridFunction:
    return GridFunction.constant(f.domain, 1.0) if a is None else a


def _grandizer_factor(profile_a: np.ndarray, norm_a: float) -> float:
    if norm_a == 0:
        raise DomainError("The grandizer has zero weighted Lebesgue norm.")
    return float(np.max(profile_a)) / norm_a


def upper_embedding_check(f: GridFunction, q: float, w: GridFunction | None = None,
                          a: GridFunction | None = None,
                          eps_grid: EpsilonGrid | None = None,
                          tolerance: float = 1e-9) -> EmbeddingReport:
    """Check ``||f||_{q),a} ≤ ||f||_{L^q(w)} ||a||_{q),a} / ||a||_{L^q(w)}``.

    Parameters
    ----------
    f : GridFunction
        Field.
    q : float
        Exponent of the grand space.
    w, a : GridFunction, optional
        Weight and grandizer, by default one.
    eps_grid : EpsilonGrid, optional
        Shared ε grid.
    tolerance : float, optional
        Relative tolerance, by default 1e-9.

    Returns
    -------
    EmbeddingReport
        Both sides of the inequality.
    """
    a = _unit(f, a)
    eps = (EpsilonGrid(q) if eps_grid is None else eps_grid).eps
    profile_f, profile_a = EpsilonProfile([f, a], q, w, a)(eps)
    rhs = lq_norm(f, q, w) * _grandizer_factor(profile_a, lq_norm(a, q, w))
    return EmbeddingReport(name="upper embedding", lhs=float(np.max(profile_f)),
                           rhs=rhs, tolerance=tolerance)


def chain_check(g: GridFunction, q: float, w: GridFunction | None = None,
                a: GridFunction | None = None, eps_grid: EpsilonGrid | None = None,
                tolerance: float = 1e-9) -> VerificationReport:
    """Check the embedding chain at every ε of a grid.

    For every ε the scaled norm ``ε^{1/(q-ε)} ||g||_{L^{q-ε}(w a^ε)}`` must not exceed
    the grand norm, which in turn must not exceed the upper embedding bound.
    """
    a = _unit(g, a)
    eps = (EpsilonGrid(q) if eps_grid is None else eps_grid).eps
    profile_g, profile_a = EpsilonProfile([g, a], q, w, a)(eps)
    grand = float(np.max(profile_g))
    upper = lq_norm(g, q, w) * _grandizer_factor(profile_a, lq_norm(a, q, w))
    lower_bad = eps[profile_g > grand]
    upper_ok = grand <= upper * (1 + tolerance)
    violations = tuple(("lower", float(e)) for e in lower_bad)
    if not upper_ok:
        violations += (("upper", grand, upper),)
    return VerificationReport(
        name="embedding chain", passed=not violations,
        ratio=grand / upper if upper > 0 else 0.0,
        constants={"grand": grand, "upper": upper,
                   "lower_min": float(np.min(profile_g))},
        violations=violations)


def sobolev_embedding_check(f: GridFunction, q: float, w: GridFunction | None = None,
                            a: GridFunction | None = None,
                            eps_grid: EpsilonGrid | None = None,
                            tolerance: float = 1e-9) -> EmbeddingReport:
    """Check ``||f||_{W^{1,q)}_a(w)} ≤ K_a ||f||_{W^{1,q}(w)}``.

    The constant is ``K_a = 4 ||a||_{q),a} / ||a||_{L^q(w)}`` and the left-hand side is
    the sup-form grand Sobolev norm.
    """
    a = _unit(f, a)
    eps_grid = EpsilonGrid(q) if eps_grid is None else eps_grid
    sup, _, _ = grand_sobolev_profiles(f, q, w, a, eps_grid)
    profile_a = EpsilonProfile([a], q, w, a)(eps_grid.eps)[0]
    k_a = 4 * _grandizer_factor(profile_a, lq_norm(a, q, w))
    _logger.debug("Sobolev embedding constant K_a = %g.", k_a)
    return EmbeddingReport(name="Sobolev embedding", lhs=sup.value,
                           rhs=k_a * sobolev_norm(f, q, w), tolerance=tolerance)


def _local_constant(values: tuple[np.ndarray, np.ndarray], eps0: float,
                    q: float, estimate: float, cell_volume: float) -> float:
    # |E| V^{1/p} (ε₀ ∫_E W)^{-1/p} with W = w a^ε₀ and p = q - ε₀
    w_values, a_values = values
    p = q - eps0
    weight = (w_values * a_values ** eps0).ravel()
    measure = weight.size * cell_volume
    box_value = float(np.mean(weight)
                      * np.mean(weight ** (-1 / (p - 1))) ** (p - 1))
    v = max(estimate, box_value)
    return measure * v ** (1 / p) * (eps0 * np.sum(weight) * cell_volume) ** (-1 / p)


def _local_setup(f: GridFunction, lower: ArrayLike, upper: ArrayLike, q: float,
                 w: Weight | None, a: Weight | None, delta: float,
                 eps_grid: EpsilonGrid | None, family: CubeFamily | None
                 ) -> tuple[tuple[slice, ...], GridFunction, GridFunction,
                            EpsilonGrid, float, float]:
    w, a = as_weight(w), as_weight(a)
    domain = f.domain
    eps0, estimate = grandizer_exponent_search(w, a, q, delta, domain,
                                               family=family)
    slices = domain.snap(lower, upper)
    w_grid, a_grid = sample_weight(w, domain), sample_weight(a, domain)
    constant = _local_constant((w_grid.values[slices], a_grid.values[slices]), eps0,
                               q, estimate.value, domain.cell_volume)
    eps_grid = EpsilonGrid(q) if eps_grid is None else eps_grid
    merged = EpsilonGrid(q, values=tuple(np.union1d(eps_grid.eps, [eps0])))
    _logger.debug("Local constant %g with ε₀ = %g and [w a^ε₀] ≈ %g.", constant, eps0,
                  estimate.value)
    return slices, w_grid, a_grid, merged, eps0, constant


def local_integrability_check(f: GridFunction, lower: ArrayLike, upper: ArrayLike,
                              q: float, w: Weight | None = None,
                              a: Weight | None = None, delta: float = 0.5,
                              eps_grid: EpsilonGrid | None = None,
                              family: CubeFamily | None = None,
                              tolerance: float = 1e-9) -> EmbeddingReport:
    """Check ``∫_E |f| ≤ C_E ||f||_{q),a}`` on a sub-box ``E``.

    With ``ε₀`` from :func:`grandizer_exponent_search`, ``p = q - ε₀`` and
    ``W = w a^ε₀``, the constant is ``C_E = |E| V_E^{1/p} (ε₀ ∫_E W)^{-1/p}``, where
    ``V_E`` is the larger of the A_p estimate of ``W`` and its A_p expression on ``E``.

    Parameters
    ----------
    f : GridFunction
        Field.
    lower, upper : ArrayLike
        Corners of ``E``, snapped to cell centers.
    q : float
        Exponent of the grand space.
    w, a : WeightSpec | CompositeWeight, optional
        Weight and grandizer, by default one.
    delta : float, optional
        Exponent with ``a^δ ∈ A_q``, by default 0.5.
    eps_grid : EpsilonGrid, optional
        ε grid of the grand norm; ``ε₀`` is added to it.
    family : CubeFamily, optional
        Search family of the A_q estimates.
    tolerance : float, optional
        Relative tolerance, by default 1e-9.

    Returns
    -------
    EmbeddingReport
        Both sides of the inequality.
    """
    slices, w_grid, a_grid, grid, _, constant = _local_setup(
        f, lower, upper, q, w, a, delta, eps_grid, family)
    lhs = float(np.sum(np.abs(f.values[slices])) * f.domain.cell_volume)
    norm = grand_norm(f, q, w_grid, a_grid, grid, refine=False).value
    return EmbeddingReport(name="local integrability", lhs=lhs, rhs=constant * norm,
                           tolerance=tolerance)


def local_sobolev_check(f: GridFunction, lower: ArrayLike, upper: ArrayLike, q: float,
                        w: Weight | None = None, a: Weight | None = None,
                        delta: float = 0.5, eps_grid: EpsilonGrid | None = None,
                        family: CubeFamily | None = None,
                        tolerance: float = 1e-9) -> EmbeddingReport:
    """Check ``∫_E (|f| + |∇f|) ≤ 4 C_E ||f||_{W^{1,q)}_a}`` on a sub-box ``E``.

    The constant ``C_E`` is the one of :func:`local_integrability_check` and the norm
    is the sup-form grand Sobolev norm.
    """
    slices, w_grid, a_grid, grid, _, constant = _local_setup(
        f, lower, upper, q, w, a, delta, eps_grid, family)
    grad = gradient_magnitude(f)
    lhs = float((np.sum(np.abs(f.values[slices])) + np.sum(grad.values[slices]))
                * f.domain.cell_volume)
    sup, _, _ = grand_sobolev_profiles(f, q, w_grid, a_grid, grid)
    return EmbeddingReport(name="local Sobolev integrability", lhs=lhs,
                           rhs=4 * constant * sup.value, tolerance=tolerance)
