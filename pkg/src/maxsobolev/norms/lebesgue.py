"""Weighted Lebesgue and grand Lebesgue norms."""
from __future__ import annotations

import logging
import math
import warnings
from dataclasses import dataclass
from typing import TYPE_CHECKING

import numpy as np
from scipy.optimize import minimize_scalar

from maxsobolev.core.exceptions import DomainError, EndpointSupremumWarning
from maxsobolev.core.reports import GrandNormResult
from maxsobolev.grid.functions import integrate

if TYPE_CHECKING:
    from collections.abc import Callable, Sequence

    from numpy.typing import ArrayLike

    from maxsobolev.grid.functions import GridFunction

__all__ = ["EpsilonGrid", "EpsilonProfile", "grand_norm", "lq_norm", "maximize_profile"]

_logger = logging.getLogger(__name__)

# Upper bound on the number of entries of the temporary (ε, cell) arrays.
_CHUNK_ENTRIES = 2 ** 22


def _check_weight(f: GridFunction, w: GridFunction | None, name: str) -> None:
    if w is None:
        return
    if w.domain != f.domain:
        raise DomainError(f"Weight {name} lives on {w.domain}, but the field on "
                          f"{f.domain}.")
    if np.any(w.values <= 0):
        raise DomainError(f"Weight {name} must be positive.")


def lq_norm(f: GridFunction, q: float, w: GridFunction | None = None) -> float:
    """Weighted Lebesgue norm ``(∫ |f|^q w)^{1/q}``.

    Parameters
    ----------
    f : GridFunction
        Field.
    q : float
        Exponent, at least one.
    w : GridFunction, optional
        Positive weight on the domain of ``f``, by default one.

    Returns
    -------
    float
        The norm computed with the midpoint rule.
    """
    if not q >= 1:
        raise ValueError(f"The exponent q must be at least 1, got {q}.")
    _check_weight(f, w, "w")
    return integrate(abs(f) ** q, w) ** (1 / q)


@dataclass(frozen=True)
class EpsilonGrid:
    """Grid of ε values in ``(0, q - 1)`` for the grand norms.

    By default ``points`` equidistant values cover ``[ε_min, q - 1 - ε_min]`` with
    ``ε_min = (q - 1)/4096``. Explicit values replace the uniform grid.

    Parameters
    ----------
    q : float
        Exponent of the grand space.
    points : int, optional
        Number of uniform grid points, by default 2048.
    values : Sequence[float], optional
        Explicit increasing ε values in ``(0, q - 1)``.
    """

    q: float
    points: int = 2048
    values: tuple[float, ...] | None = None

    def __post_init__(self) -> None:
        object.__setattr__(self, "q", float(self.q))
        if not self.q > 1:
            raise ValueError(f"The exponent q must exceed 1, got {self.q}.")
        if self.values is not None:
            values = tuple(float(v) for v in self.values)
            if not values:
                raise ValueError("The ε grid is empty.")
            if any(not 0 < v < self.q - 1 for v in values):
                raise ValueError(f"ε values must lie in (0, {self.q - 1}).")
            if any(b <= a for a, b in zip(values, values[1:])):
                raise ValueError("ε values must be strictly increasing.")
            object.__setattr__(self, "values", values)
        elif self.points < 1:
            raise ValueError("The ε grid is empty.")

    @property
    def eps_min(self) -> float:
        """Distance of the uniform grid to the ends of ``(0, q - 1)``."""
        return (self.q - 1) / 4096

    @property
    def eps(self) -> np.ndarray:
        """The ε values."""
        if self.values is not None:
            return np.asarray(self.values)
        if self.points == 1:
            return np.array([(self.q - 1) / 2])
        return np.linspace(self.eps_min, self.q - 1 - self.eps_min, self.points)

    @property
    def bounds(self) -> tuple[float, float]:
        """Smallest and largest ε of the grid."""
        eps = self.eps
        return float(eps[0]), float(eps[-1])


class EpsilonProfile:
    """Scaled norms ``(ε ∫ |g|^{q-ε} w a^ε)^{1/(q-ε)}`` of fields as functions of ε.

    Parameters
    ----------
    fields : Sequence[GridFunction]
        Fields sharing a domain.
    q : float
        Exponent of the grand space.
    w, a : GridFunction, optional
        Weight and grandizer, by default one.
    normalize : bool, optional
        Whether the integrals are divided by the volume of the domain.
    """

    def __init__(self, fields: Sequence[GridFunction], q: float,
                 w: GridFunction | None = None, a: GridFunction | None = None,
                 normalize: bool = False) -> None:
        if not fields:
            raise ValueError("At least one field is required.")
        domain = fields[0].domain
        for f in fields:
            if f.domain != domain:
                raise DomainError("All fields of a profile must share a domain.")
            _check_weight(f, w, "w")
            _check_weight(f, a, "a")
        self.q = float(q)
        self.domain = domain
        self._support = [np.abs(f.values).ravel() > 0 for f in fields]
        self._abs = [np.abs(f.values).ravel()[s] for f, s in zip(fields, self._support)]
        self._w = None if w is None else w.values.ravel()
        self._a = None if a is None else a.values.ravel()
        self._scale = domain.cell_volume / (domain.volume if normalize else 1.0)

    def _weights(self, eps: np.ndarray, support: np.ndarray) -> np.ndarray | float:
        weight = 1.0
        if self._w is not None:
            weight = self._w[support][None, :]
        if self._a is not None:
            with np.errstate(over="ignore", invalid="ignore"):
                weight = weight * self._a[support][None, :] ** eps[:, None]
        return weight

    def __call__(self, eps: ArrayLike) -> np.ndarray:
        """Evaluate the profiles, one row per field and one column per ε."""
        eps = np.atleast_1d(np.asarray(eps, dtype=float))
        out = np.zeros((len(self._abs), eps.size))
        for i, (values, support) in enumerate(zip(self._abs, self._support)):
            if values.size == 0:
                continue
            chunk = max(1, _CHUNK_ENTRIES // values.size)
            for start in range(0, eps.size, chunk):
                e = eps[start:start + chunk]
                p = self.q - e
                with np.errstate(over="ignore", invalid="ignore"):
                    weights = self._weights(e, support)
                    integrand = values[None, :] ** p[:, None] * weights
                    integral = np.sum(integrand, axis=1) * self._scale
                    out[i, start:start + chunk] = (e * integral) ** (1 / p)
        return out


def _trend(index: int, size: int) -> str:
    if size > 1 and index == 0:
        return "lower"
    if size > 1 and index == size - 1:
        return "upper"
    return "interior"


def maximize_profile(eps: np.ndarray, values: np.ndarray, q: float,
                     evaluate: Callable[[float], float] | None = None
                     ) -> GrandNormResult:
    """Turn an ε-profile into a :class:`GrandNormResult`.

    Parameters
    ----------
    eps : numpy.ndarray
        Increasing ε values.
    values : numpy.ndarray
        Profile at ``eps``.
    q : float
        Exponent of the grand space.
    evaluate : Callable[[float], float], optional
        Profile as a function of ε. If given and the grid maximum is interior, the
        maximum is refined with a golden-section search and the refined point is
        added to the profile.

    Returns
    -------
    GrandNormResult
        The maximum of the profile with its location and trend.
    """
    if eps.size == 0:
        raise ValueError("The ε grid is empty.")
    if not np.isfinite(values).all():
        bad = float(eps[np.argmin(np.isfinite(values))])
        raise ValueError(f"The ε-profile is not finite at ε={bad}; the field is not "
                         f"in the weighted Lebesgue space of exponent {q - bad}.")
    index = int(np.argmax(values))
    trend = _trend(index, eps.size)
    if evaluate is not None and trend == "interior" and 0 < index < eps.size - 1:
        bracket = (eps[index - 1], eps[index], eps[index + 1])
        try:
            res = minimize_scalar(lambda e: -evaluate(e), bracket=bracket,
                                  method="golden", options={"xtol": 1e-10})
        except ValueError:
            res = None
        if (res is not None and bracket[0] < res.x < bracket[2]
                and res.x not in eps and math.isfinite(-res.fun)):
            position = int(np.searchsorted(eps, res.x))
            eps = np.insert(eps, position, res.x)
            values = np.insert(values, position, -res.fun)
            _logger.debug("Golden refinement moved the maximum from ε=%g to ε=%g.",
                          bracket[1], res.x)
            index = int(np.argmax(values))
    if trend != "interior" and values[index] > 0:
        warnings.warn(f"The ε-profile still increases towards the {trend} end of the "
                      f"ε grid; the supremum is not attained inside the grid.",
                      EndpointSupremumWarning, stacklevel=3)
    if values[index] == 0:
        trend = "interior"
    return GrandNormResult(q=q, value=float(values[index]),
                           argmax_eps=float(eps[index]), eps=eps, profile=values,
                           trend=trend)


def grand_norm(f: GridFunction, q: float, w: GridFunction | None = None,
               a: GridFunction | None = None, eps_grid: EpsilonGrid | None = None,
               refine: bool = True, normalize: bool = False) -> GrandNormResult:
    """Generalized grand Lebesgue norm.

    The norm is ``sup_ε (ε ∫ |f|^{q-ε} w a^ε)^{1/(q-ε)}`` over ``ε ∈ (0, q - 1)``,
    evaluated on an ε grid and refined around an interior grid maximum.

    Parameters
    ----------
    f : GridFunction
        Field.
    q : float
        Exponent, larger than one.
    w : GridFunction, optional
        Weight, by default one.
    a : GridFunction, optional
        Grandizer, by default one.
    eps_grid : EpsilonGrid, optional
        Grid of ε values, by default 2048 uniform points.
    refine : bool, optional
        Whether to refine an interior maximum, by default True. Checks that compare
        profiles of several fields pass False to keep a shared grid.
    normalize : bool, optional
        Whether to divide the integral by ``|Ω|``, by default False.

    Returns
    -------
    GrandNormResult
        Norm, maximizing ε and ε-profile.
    """
    eps_grid = EpsilonGrid(q) if eps_grid is None else eps_grid
    if eps_grid.q != float(q):
        raise ValueError(f"The ε grid belongs to q={eps_grid.q}, not q={q}.")
    profile = EpsilonProfile([f], q, w, a, normalize)
    eps = eps_grid.eps
    evaluate = (lambda e: float(profile(e)[0, 0])) if refine else None
    return maximize_profile(eps, profile(eps)[0], float(q), evaluate)
