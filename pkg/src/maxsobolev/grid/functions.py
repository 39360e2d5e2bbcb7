"""Fields sampled on a box grid, and the quadrature and difference operators on them."""
from __future__ import annotations

import logging
import warnings
from dataclasses import dataclass
from typing import TYPE_CHECKING

import numpy as np
from typing_extensions import Self

from maxsobolev.core.exceptions import (
    DegenerateBallWarning,
    DomainError,
    ResolutionError,
)
from maxsobolev.grid.domains import Ball, BoxDomain

if TYPE_CHECKING:
    from collections.abc import Callable, Sequence

    from numpy.typing import ArrayLike

__all__ = [
    "GridFunction",
    "gradient",
    "gradient_magnitude",
    "integral_average",
    "integrate",
    "window_sums",
]

_logger = logging.getLogger(__name__)

KINDS = ("scalar", "gradient-component")


@dataclass(frozen=True, eq=False)
class GridFunction:
    """Samples of a scalar field at the cell centers of a :class:`BoxDomain`.

    Parameters
    ----------
    domain : BoxDomain
        Grid the samples live on.
    values : ArrayLike
        One value per cell, either with the domain's shape or flattened row-major.
    kind : str, optional
        ``"scalar"`` or ``"gradient-component"``, by default ``"scalar"``.
    extended : bool, optional
        Whether ``+inf`` values are allowed, as for weights with non-integrable
        singularities, by default False.
    """

    domain: BoxDomain
    values: np.ndarray
    kind: str = "scalar"
    extended: bool = False

    def __post_init__(self) -> None:
        values = np.array(self.values, dtype=float)
        if values.size != self.domain.n_cells:
            raise DomainError(f"Got {values.size} values for a grid of "
                              f"{self.domain.n_cells} cells.")
        values = values.reshape(self.domain.shape)
        if self.kind not in KINDS:
            raise ValueError(f"Kind must be one of {KINDS}, got {self.kind!r}.")
        if np.isnan(values).any():
            raise DomainError("Grid function values contain NaN.")
        if self.extended:
            if np.isneginf(values).any():
                raise DomainError("Extended grid function values contain -inf.")
        elif not np.isfinite(values).all():
            raise DomainError("Grid function values are not finite; flag the field "
                              "as extended to allow +inf.")
        values.setflags(write=False)
        object.__setattr__(self, "values", values)

    @classmethod
    def from_callable(cls, domain: BoxDomain, func: Callable[..., ArrayLike],
                      **kwargs: object) -> Self:
        """Sample ``func(x0, ..., x_{n-1})`` at the cell centers of ``domain``."""
        with np.errstate(all="ignore"):
            values = np.broadcast_to(func(*domain.mesh()), domain.shape)
        return cls(domain, values, **kwargs)

    @classmethod
    def constant(cls, domain: BoxDomain, value: float) -> Self:
        """Field with the same value in every cell."""
        return cls(domain, np.full(domain.shape, float(value)))

    @property
    def flat(self) -> np.ndarray:
        """Values flattened in row-major order."""
        return self.values.ravel()

    def __repr__(self) -> str:
        return (f"{self.__class__.__name__}(domain={self.domain!r}, kind={self.kind!r}"
                f", extended={self.extended!r})")

    def with_values(self, values: ArrayLike, **kwargs: object) -> Self:
        """Return a field on the same domain with new values."""
        options = {"kind": self.kind, "extended": self.extended}
        options.update(kwargs)
        return self.__class__(self.domain, values, **options)

    def map(self, func: Callable[[np.ndarray], ArrayLike]) -> Self:
        """Apply an element-wise function to the values."""
        with np.errstate(all="ignore"):
            values = func(self.values)
        return self.with_values(values, kind="scalar")

    def _other_values(self, other: object) -> np.ndarray | float:
        if isinstance(other, GridFunction):
            if other.domain != self.domain:
                raise DomainError(f"Grid functions live on different domains "
                                  f"{self.domain} and {other.domain}.")
            return other.values
        if isinstance(other, (int, float, np.floating, np.integer)):
            return float(other)
        return NotImplemented

    def _combine(self, other: object, op: Callable) -> Self:
        other_values = self._other_values(other)
        if other_values is NotImplemented:
            return NotImplemented
        extended = self.extended or getattr(other, "extended", False)
        with np.errstate(invalid="ignore"):
            values = op(self.values, other_values)
        return self.with_values(values, kind="scalar", extended=extended)

    def __add__(self, other: object) -> Self:
        return self._combine(other, np.add)

    def __radd__(self, other: object) -> Self:
        return self._combine(other, np.add)

    def __sub__(self, other: object) -> Self:
        return self._combine(other, np.subtract)

    def __rsub__(self, other: object) -> Self:
        return self._combine(other, lambda a, b: b - a)

    def __mul__(self, other: object) -> Self:
        return self._combine(other, np.multiply)

    def __rmul__(self, other: object) -> Self:
        return self._combine(other, np.multiply)

    def __truediv__(self, other: object) -> Self:
        return self._combine(other, np.divide)

    def __neg__(self) -> Self:
        return self.with_values(-self.values, kind="scalar")

    def __abs__(self) -> Self:
        return self.with_values(np.abs(self.values))

    def __pow__(self, exponent: float) -> Self:
        with np.errstate(divide="ignore"):
            values = np.power(self.values, float(exponent))
        return self.with_values(values, kind="scalar",
                                extended=self.extended or exponent < 0)

    def at(self, x: ArrayLike) -> float:
        """Value of the cell that contains the point ``x``."""
        return float(self.values[self.domain.locate(x)])

    def restrict(self, lower: ArrayLike | BoxDomain,
                 upper: ArrayLike | None = None) -> Self:
        """Restrict the field to the cells whose centers lie in a sub-box.

        Parameters
        ----------
        lower : ArrayLike | BoxDomain
            Lower corner of the sub-box, or a box whose corners are used.
        upper : ArrayLike, optional
            Upper corner of the sub-box.

        Returns
        -------
        GridFunction
            The restricted field on the sub-box snapped to cell faces.
        """
        if isinstance(lower, BoxDomain):
            lower, upper = lower.lower, lower.upper
        if upper is None:
            raise TypeError("The upper corner of the sub-box is required.")
        slices = self.domain.snap(lower, upper)
        return self.__class__(self.domain.subdomain(slices), self.values[slices],
                              kind=self.kind, extended=self.extended)


def integrate(f: GridFunction, weight: GridFunction | None = None) -> float:
    """Midpoint quadrature ``Σ f·w·|cell|`` over the domain.

    Parameters
    ----------
    f : GridFunction
        Integrand.
    weight : GridFunction, optional
        Weight sharing the domain of ``f``.

    Returns
    -------
    float
        Value of the integral. Cells where the product is ``0·inf`` contribute zero.

    Examples
    --------
    >>> domain = BoxDomain((0.0,), (1.0,), 8)
    >>> integrate(GridFunction.from_callable(domain, lambda x: x))
    0.5
    """
    values = f.values
    if weight is not None:
        if weight.domain != f.domain:
            raise DomainError(f"Weight domain {weight.domain} differs from the "
                              f"integrand domain {f.domain}.")
        with np.errstate(invalid="ignore"):
            values = values * weight.values
        values = np.where(np.isnan(values), 0.0, values)
    return float(np.sum(values) * f.domain.cell_volume)


def gradient(f: GridFunction) -> list[GridFunction]:
    """Finite-difference gradient with one component per axis.

    Central differences are used in the interior and second-order one-sided
    differences in the boundary cells.
    """
    if any(r < 3 for r in f.domain.resolution):
        raise ResolutionError(f"The gradient needs at least 3 cells per axis, got "
                              f"resolution {f.domain.resolution}.")
    if not np.isfinite(f.values).all():
        raise DomainError("The gradient of a non-finite field is undefined.")
    components = np.gradient(f.values, *f.domain.spacing, edge_order=2)
    if f.domain.dim == 1:
        components = [components]
    return [GridFunction(f.domain, c, kind="gradient-component") for c in components]


def gradient_magnitude(f: GridFunction) -> GridFunction:
    """Euclidean length ``|∇f|`` of the finite-difference gradient."""
    components = gradient(f)
    length = np.sqrt(sum(c.values ** 2 for c in components))
    return GridFunction(f.domain, length)


def integral_average(f: GridFunction, ball: Ball) -> float:
    """Average of ``f``, extended by zero, over a ball.

    The sum over the cells whose centers lie in the ball is divided by the exact
    ball volume ω_n r^n. A ball containing no cell center yields zero and emits a
    :class:`DegenerateBallWarning`.
    """
    slices, mask = f.domain.ball_window(ball)
    if not mask.any():
        warnings.warn(f"{ball} contains no cell center of the domain; its average "
                      f"is taken as zero.", DegenerateBallWarning, stacklevel=2)
        return 0.0
    total = np.sum(f.values[slices][mask]) * f.domain.cell_volume
    return float(total / ball.volume)


def _window_axis(values: np.ndarray, axis: int, lo: int, hi: int) -> np.ndarray:
    n = values.shape[axis]
    csum = np.cumsum(values, axis=axis)
    pad = [(0, 0)] * values.ndim
    pad[axis] = (1, 0)
    csum = np.pad(csum, pad)
    idx = np.arange(n)
    upper = np.clip(idx + hi + 1, 0, n)
    lower = np.clip(idx + lo, 0, n)
    return np.take(csum, upper, axis=axis) - np.take(csum, lower, axis=axis)


def window_sums(values: ArrayLike, lo: int | Sequence[int],
                hi: int | Sequence[int]) -> np.ndarray:
    """Sums over the index windows ``[i + lo, i + hi]`` along every axis.

    Values outside the array are treated as zero. The sums are computed with one
    prefix sum per axis.

    Parameters
    ----------
    values : ArrayLike
        Array of cell values.
    lo, hi : int | Sequence[int]
        Window offsets relative to each index, per axis or shared by all axes.

    Returns
    -------
    numpy.ndarray
        Array of window sums with the shape of ``values``.

    Examples
    --------
    >>> window_sums([1.0, 2.0, 3.0, 4.0], -1, 1)
    array([3., 6., 9., 7.])
    """
    result = np.asarray(values, dtype=float)
    ndim = result.ndim
    los = [int(lo)] * ndim if np.isscalar(lo) else [int(v) for v in lo]
    his = [int(hi)] * ndim if np.isscalar(hi) else [int(v) for v in hi]
    if len(los) != ndim or len(his) != ndim:
        raise ValueError(f"Window offsets {lo}, {hi} do not match {ndim} axes.")
    for axis, (a, b) in enumerate(zip(los, his)):
        if a > b:
            raise ValueError(f"Window lower offset {a} exceeds upper offset {b}.")
        result = _window_axis(result, axis, a, b)
    return result
