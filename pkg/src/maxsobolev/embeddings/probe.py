"""Empirical boundedness of the maximal operator on grand Lebesgue spaces."""
from __future__ import annotations

import logging
import math
from typing import TYPE_CHECKING

import numpy as np

from maxsobolev.core.exceptions import DomainError
from maxsobolev.core.reports import VerificationReport
from maxsobolev.grid.catalog import TestFunctionSpec, sample
from maxsobolev.grid.functions import GridFunction
from maxsobolev.maximal.kernels import maximal_field
from maxsobolev.norms.lebesgue import EpsilonGrid, EpsilonProfile
from maxsobolev.utilities.utilities import parallel_map

if TYPE_CHECKING:
    from collections.abc import Sequence

    from numpy.typing import ArrayLike

    from maxsobolev.grid.domains import BoxDomain
    from maxsobolev.maximal.config import MaximalConfig

__all__ = ["maximal_boundedness_probe", "stress_family"]

_logger = logging.getLogger(__name__)


def _restricted(f: GridFunction | None, omega: tuple[ArrayLike, ArrayLike] | None
                ) -> GridFunction | None:
    if f is None or omega is None:
        return f
    return f.restrict(*omega)


def maximal_boundedness_probe(family: Sequence[GridFunction], q: float,
                              w: GridFunction | None = None,
                              a: GridFunction | None = None,
                              cfg: MaximalConfig | None = None,
                              eps_grid: EpsilonGrid | None = None,
                              omega: tuple[ArrayLike, ArrayLike] | None = None
                              ) -> VerificationReport:
    """Largest ratio ``||M_t g||_{q),a} / ||g||_{q),a}`` over a family of fields.

    The maximal function is computed on the whole computational box, which serves as
    the enlarged cube around Ω, and both norms are taken over Ω.

    Parameters
    ----------
    family : Sequence[GridFunction]
        Fields sharing a domain.
    q : float
        Exponent of the grand space.
    w, a : GridFunction, optional
        Weight and grandizer on the computational box, by default one.
    cfg : MaximalConfig, optional
        Truncation and radius grid of the maximal operator.
    eps_grid : EpsilonGrid, optional
        Shared ε grid of the norms.
    omega : tuple[ArrayLike, ArrayLike], optional
        Corners of Ω, by default the whole box.

    Returns
    -------
    VerificationReport
        Report whose ratio is the empirical bound ``K̂_q``; it passes when every
        ratio is finite.

    Raises
    ------
    ValueError
        If a member has zero grand norm.
    """
    if not family:
        raise ValueError("The probe family is empty.")
    eps = (EpsilonGrid(q) if eps_grid is None else eps_grid).eps
    w_omega, a_omega = _restricted(w, omega), _restricted(a, omega)

    def ratio(g: GridFunction) -> float:
        mg = maximal_field(g, cfg)
        profile = EpsilonProfile([_restricted(g, omega), _restricted(mg, omega)], q,
                                 w_omega, a_omega)(eps)
        norm_g, norm_mg = (float(np.max(p)) for p in profile)
        if norm_g == 0:
            raise ValueError("A probe member has zero grand norm on Ω.")
        return norm_mg / norm_g

    ratios = np.array(parallel_map(ratio, family))
    bad = tuple(int(i) for i in np.flatnonzero(~np.isfinite(ratios)))
    finite = ratios[np.isfinite(ratios)]
    _logger.info("Maximal probe over %d members: largest ratio %g.", len(ratios),
                 float(np.max(ratios)))
    return VerificationReport(
        name="maximal boundedness probe", passed=not bad,
        ratio=float(np.max(ratios)),
        constants={"k_hat": float(np.max(ratios)),
                   "min_ratio": float(np.min(finite)) if finite.size else math.inf,
                   "members": len(ratios)},
        violations=bad)


def stress_family(domain: BoxDomain, q: float, count: int = 20, seed: int = 0
                  ) -> list[GridFunction]:
    """Seeded family of bumps, indicators and power singularities in ``L^{q)}``.

    Members cycle through bumps and box indicators at random centers and scales
    inside the middle half of the domain, and radial powers ``|x - c|^{-γ}`` with
    ``γ`` just below ``n/q``, so that they lie in the grand space but close to its
    edge.
    """
    if count < 1:
        raise ValueError(f"The family needs at least one member, got {count}.")
    rng = np.random.default_rng(seed)
    lower, upper = np.asarray(domain.lower), np.asarray(domain.upper)
    middle, half = (lower + upper) / 2, (upper - lower) / 4
    n = domain.dim
    members = []
    for k in range(count):
        center = middle + rng.uniform(-1, 1, n) * half / 2
        scale = float(rng.uniform(0.1, 1.0) * np.min(half))
        kind = k % 3
        if kind == 0:
            spec = TestFunctionSpec("bump", (1.0, scale, *center))
        elif kind == 1:
            bounds = [v for c in center for v in (c - scale, c + scale)]
            spec = TestFunctionSpec("indicator", bounds)
        else:
            gamma = n / q * float(rng.uniform(0.5, 0.95))
            dist = np.linalg.norm(domain.points() - center, axis=-1)
            floor = domain.min_spacing / 4
            members.append(GridFunction(domain, np.maximum(dist, floor) ** -gamma))
            continue
        members.append(sample(spec, domain))
    if not all(np.any(m.values != 0) for m in members):
        raise DomainError("A stress family member vanishes on the grid.")
    return members
