"""Weight families and their sampling on grids."""
from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from typing import TYPE_CHECKING, Union

import numpy as np

from maxsobolev.core.exceptions import CatalogError, DomainError
from maxsobolev.grid.functions import GridFunction

if TYPE_CHECKING:
    from maxsobolev.grid.catalog import TestFunctionSpec
    from maxsobolev.grid.domains import BoxDomain

__all__ = ["CompositeWeight", "Weight", "WeightSpec", "as_weight", "sample_weight"]

_logger = logging.getLogger(__name__)

FAMILIES = ("constant", "power", "shifted-power", "exp-decay", "grid")
_CATALOG_FAMILIES = {"constant": "constant", "power-weight": "power",
                     "exp-decay-weight": "exp-decay"}


@dataclass(frozen=True, eq=False)
class WeightSpec:
    """A positive weight from one of the supported families.

    Parameters
    ----------
    family : str
        ``"constant"`` with params ``[c]``, ``"power"`` (``|x|^β``) with params
        ``[β]``, ``"shifted-power"`` (``|x - s|^β``) with params ``[β, s_1, ..., s_n]``,
        ``"exp-decay"`` (``exp(-λ|x|)``) with params ``[λ]`` or ``"grid"`` for a given
        positive grid function.
    params : Iterable[float], optional
        Parameters of the family.
    grid : GridFunction, optional
        Samples of the weight for the ``"grid"`` family.
    """

    family: str
    params: tuple[float, ...] = ()
    grid: GridFunction | None = field(default=None, repr=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "params", tuple(float(p) for p in self.params))
        if self.family not in FAMILIES:
            raise CatalogError(f"Weight family must be one of {FAMILIES}, got "
                               f"{self.family!r}.")
        expected = {"constant": 1, "power": 1, "exp-decay": 1, "grid": 0}
        if self.family in expected and len(self.params) != expected[self.family]:
            raise CatalogError(f"Weight family {self.family!r} takes "
                               f"{expected[self.family]} parameters, got "
                               f"{len(self.params)}.")
        if self.family == "shifted-power" and len(self.params) < 2:
            raise CatalogError("Weight family 'shifted-power' takes [β, s_1, ...].")
        if self.family == "constant" and not self.params[0] > 0:
            raise CatalogError(f"Constant weight must be positive, got "
                               f"{self.params[0]}.")
        if self.family == "grid":
            if self.grid is None:
                raise CatalogError("Weight family 'grid' requires a grid function.")
            if not np.all(self.grid.values > 0):
                raise DomainError("Grid weights must be positive in every cell.")

    @classmethod
    def from_catalog(cls, spec: TestFunctionSpec) -> WeightSpec:
        """Weight corresponding to a catalog entry such as ``power-weight``."""
        try:
            family = _CATALOG_FAMILIES[spec.catalog_id]
        except KeyError:
            raise CatalogError(f"Catalog entry {spec.catalog_id!r} is not a weight "
                               f"family.") from None
        return cls(family, spec.params)

    @property
    def power_center(self) -> tuple[float, ...] | None:
        """Location of the singularity of a power weight."""
        if self.family == "power":
            return ()
        if self.family == "shifted-power":
            return self.params[1:]
        return None

    def power(self, exponent: float) -> CompositeWeight:
        """The weight raised to a real power."""
        return CompositeWeight(((self, float(exponent)),))

    def __mul__(self, other: WeightSpec | CompositeWeight) -> CompositeWeight:
        return self.power(1.0) * other

    def to_dict(self) -> dict[str, object]:
        """Return the spec as JSON compatible dictionary."""
        return {"family": self.family, "params": list(self.params)}


@dataclass(frozen=True, eq=False)
class CompositeWeight:
    """Product of weights raised to real powers, ``Π w_i^{γ_i}``."""

    factors: tuple[tuple[WeightSpec, float], ...]

    def power(self, exponent: float) -> CompositeWeight:
        """The product raised to a real power."""
        return CompositeWeight(tuple((w, e * exponent) for w, e in self.factors))

    def __mul__(self, other: WeightSpec | CompositeWeight) -> CompositeWeight:
        if isinstance(other, WeightSpec):
            other = other.power(1.0)
        if not isinstance(other, CompositeWeight):
            return NotImplemented
        return CompositeWeight(self.factors + other.factors)

    def merged(self) -> CompositeWeight:
        """Combine the factors that have a closed-form product.

        Constants multiply, exponential decays add their rates and power weights
        sharing a center add their exponents.
        """
        constant, decay = 1.0, 0.0
        powers: dict[tuple[float, ...], float] = {}
        others = []
        for weight, exponent in self.factors:
            if weight.family == "constant":
                constant *= weight.params[0] ** exponent
            elif weight.family == "exp-decay":
                decay += weight.params[0] * exponent
            elif weight.power_center is not None:
                center = weight.power_center
                powers[center] = powers.get(center, 0.0) + weight.params[0] * exponent
            else:
                others.append((weight, exponent))
        factors = []
        if constant != 1.0:
            factors.append((WeightSpec("constant", (constant,)), 1.0))
        if decay != 0.0:
            factors.append((WeightSpec("exp-decay", (decay,)), 1.0))
        for center, beta in powers.items():
            if beta == 0.0:
                continue
            if center:
                factors.append((WeightSpec("shifted-power", (beta, *center)), 1.0))
            else:
                factors.append((WeightSpec("power", (beta,)), 1.0))
        return CompositeWeight((*factors, *others))

    def to_dict(self) -> dict[str, object]:
        """Return the weight as JSON compatible dictionary."""
        return {"factors": [{**w.to_dict(), "exponent": e} for w, e in self.factors]}


Weight = Union[WeightSpec, CompositeWeight]


def _norm(domain: BoxDomain, center: tuple[float, ...]) -> np.ndarray:
    center = center or (0.0,) * domain.dim
    if len(center) != domain.dim:
        raise DomainError(f"Power weight center {center} does not have dimension "
                          f"{domain.dim}.")
    return np.sqrt(sum((x - c) ** 2 for x, c in zip(domain.mesh(), center)))


def _antiderivative(x: np.ndarray, beta: float) -> np.ndarray:
    # Antiderivative of |x|^β that is odd in x.
    with np.errstate(divide="ignore", invalid="ignore"):
        if beta == -1:
            return np.sign(x) * np.log(np.abs(x))
        return np.sign(x) * np.abs(x) ** (beta + 1) / (beta + 1)


def _power_cell_averages_1d(domain: BoxDomain, beta: float, center: float
                            ) -> np.ndarray:
    h = domain.spacing[0]
    left = domain.lower[0] + np.arange(domain.resolution[0]) * h - center
    right = left + h
    with np.errstate(invalid="ignore"):
        averages = (_antiderivative(right, beta) - _antiderivative(left, beta)) / h
    # Cells touching the singularity are integrable only for β > -1.
    touching = (left <= 0) & (right >= 0)
    if beta <= -1:
        averages[touching] = math.inf
    else:
        a, b = np.abs(left[touching]), np.abs(right[touching])
        averages[touching] = (a ** (beta + 1) + b ** (beta + 1)) / ((beta + 1) * h)
    return averages


def _sample_power(domain: BoxDomain, beta: float, center: tuple[float, ...]
                  ) -> np.ndarray:
    if domain.dim == 1:
        return _power_cell_averages_1d(domain, beta, center[0] if center else 0.0)
    dist = _norm(domain, center)
    quarter = float(np.linalg.norm(domain.spacing / 4))
    singular = dist < quarter
    with np.errstate(divide="ignore"):
        values = dist ** beta
    if beta <= -domain.dim:
        values[singular] = math.inf
    else:
        values[singular] = quarter ** beta
    return values


def _sample_factor(weight: WeightSpec, exponent: float, domain: BoxDomain
                   ) -> np.ndarray:
    if weight.family == "constant":
        return np.full(domain.shape, weight.params[0] ** exponent)
    if weight.family == "exp-decay":
        return np.exp(-weight.params[0] * exponent * _norm(domain, ()))
    if weight.power_center is not None:
        return _sample_power(domain, weight.params[0] * exponent, weight.power_center)
    if weight.grid.domain != domain:
        raise DomainError(f"Grid weight lives on {weight.grid.domain}, not on "
                          f"{domain}.")
    with np.errstate(divide="ignore"):
        return weight.grid.values ** exponent


def sample_weight(weight: Weight, domain: BoxDomain) -> GridFunction:
    """Sample a weight on a domain.

    Power weights are represented by their exact cell averages in one dimension. In
    higher dimensions they are sampled at the cell centers, except in a cell whose
    center coincides with the singularity, where the value at a point offset by a
    quarter cell is used. Non-integrable singularities give ``+inf``.

    Parameters
    ----------
    weight : WeightSpec | CompositeWeight
        Weight to sample.
    domain : BoxDomain
        Grid to sample on.

    Returns
    -------
    GridFunction
        Positive, possibly extended-real samples.
    """
    if isinstance(weight, WeightSpec):
        weight = weight.power(1.0)
    values = np.ones(domain.shape)
    for factor, exponent in weight.merged().factors:
        with np.errstate(invalid="ignore", over="ignore"):
            values = values * _sample_factor(factor, exponent, domain)
    if np.any(values <= 0) or np.isnan(values).any():
        raise DomainError(f"Weight {weight.to_dict()} is not positive on the domain; "
                          f"it may underflow.")
    return GridFunction(domain, values, extended=True)


def as_weight(weight: Weight | None) -> Weight:
    """Interpret ``None`` as the unit weight."""
    if weight is None:
        return WeightSpec("constant", (1.0,))
    return weight
