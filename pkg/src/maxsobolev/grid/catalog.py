"""Catalog of analytic test functions and weights.

Every entry is a subclass of :class:`maxsobolev.core.CatalogEntryBase` and is
registered in the :class:`maxsobolev.core.Registry` upon creation. A field is requested
through a :class:`TestFunctionSpec`, which names the entry and its parameters.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass
from functools import lru_cache
from tokenize import TokenError
from typing import TYPE_CHECKING

import numpy as np
from sympy import (
    Abs,
    And,
    Expr,
    Float,
    Piecewise,
    S,
    Symbol,
    exp,
    lambdify,
    sin,
    sqrt,
    sympify,
)
from sympy.parsing.sympy_parser import (
    convert_xor,
    parse_expr,
    standard_transformations,
)

from maxsobolev.core.base_classes import CatalogEntryBase
from maxsobolev.core.exceptions import CatalogError
from maxsobolev.core.registry import Registry
from maxsobolev.grid.functions import GridFunction

if TYPE_CHECKING:
    from collections.abc import Sequence

    from maxsobolev.grid.domains import BoxDomain

__all__ = [
    "TestFunctionSpec",
    "coordinate_symbols",
    "exact_gradient",
    "list_entries",
    "sample",
]

_logger = logging.getLogger(__name__)

_TRANSFORMATIONS = (*standard_transformations, convert_xor)


@lru_cache(maxsize=None)
def coordinate_symbols(dim: int) -> tuple[Symbol, ...]:
    """Real coordinate symbols ``x0, ..., x{dim-1}``."""
    return tuple(Symbol(f"x{k}", real=True) for k in range(dim))


def _norm(coordinates: Sequence[Symbol]) -> Expr:
    if len(coordinates) == 1:
        return Abs(coordinates[0])
    return sqrt(sum(x ** 2 for x in coordinates))


class ConstantFunction(CatalogEntryBase):
    """Constant field."""

    catalog_id = "constant"
    formula = "c"

    @classmethod
    def parameter_names(cls, dim: int) -> tuple[str, ...]:
        return ("c",)

    @classmethod
    def expression(cls, coordinates, params, text=None):  # noqa: ANN001, ANN206, ARG003
        return Float(params[0])


class LinearFunction(CatalogEntryBase):
    """Linear field along the first axis."""

    catalog_id = "linear"
    formula = "slope·x0"

    @classmethod
    def parameter_names(cls, dim: int) -> tuple[str, ...]:
        return ("slope",)

    @classmethod
    def expression(cls, coordinates, params, text=None):  # noqa: ANN001, ANN206, ARG003
        return Float(params[0]) * coordinates[0]


class PowerFunction(CatalogEntryBase):
    """Radial power of the distance to the origin."""

    catalog_id = "power"
    formula = "|x|^p"

    @classmethod
    def parameter_names(cls, dim: int) -> tuple[str, ...]:
        return ("p",)

    @classmethod
    def expression(cls, coordinates, params, text=None):  # noqa: ANN001, ANN206, ARG003
        return _norm(coordinates) ** Float(params[0])


class SineFunction(CatalogEntryBase):
    """Sine wave along the first axis."""

    catalog_id = "sine"
    formula = "sin(ω·x0)"

    @classmethod
    def parameter_names(cls, dim: int) -> tuple[str, ...]:
        return ("ω",)

    @classmethod
    def expression(cls, coordinates, params, text=None):  # noqa: ANN001, ANN206, ARG003
        return sin(Float(params[0]) * coordinates[0])


class AbsFunction(CatalogEntryBase):
    """Distance to the origin, a Lipschitz field with a kink."""

    catalog_id = "abs"
    formula = "|x|"

    @classmethod
    def expression(cls, coordinates, params, text=None):  # noqa: ANN001, ANN206, ARG003
        return _norm(coordinates)


class BumpFunction(CatalogEntryBase):
    """Smooth compactly supported bump.

    The field equals ``a·exp(1 - 1/(1 - |x-c|²/r²))`` inside ``B(c, r)`` and zero
    outside, so its maximum ``a`` is attained at the center ``c``.
    """

    catalog_id = "bump"
    formula = "a·exp(1 - 1/(1 - |x-c|²/r²)) on B(c, r)"

    @classmethod
    def parameter_names(cls, dim: int) -> tuple[str, ...]:
        return ("a", "r", *(f"c_{k + 1}" for k in range(dim)))

    @classmethod
    def expression(cls, coordinates, params, text=None):  # noqa: ANN001, ANN206, ARG003
        amplitude, radius, *center = (Float(p) for p in params)
        if not radius > 0:
            raise CatalogError(f"Bump radius must be positive, got {radius}.")
        s = sum((x - c) ** 2 for x, c in zip(coordinates, center)) / radius ** 2
        return Piecewise((amplitude * exp(1 - 1 / (1 - s)), s < 1), (S.Zero, True))


class IndicatorFunction(CatalogEntryBase):
    """Indicator of the open box ``(a1, b1) × ... × (an, bn)``."""

    catalog_id = "indicator"
    formula = "χ of (a1, b1) × ... × (an, bn)"

    @classmethod
    def parameter_names(cls, dim: int) -> tuple[str, ...]:
        return tuple(name for k in range(dim) for name in (f"a{k + 1}", f"b{k + 1}"))

    @classmethod
    def expression(cls, coordinates, params, text=None):  # noqa: ANN001, ANN206, ARG003
        conditions = []
        for k, x in enumerate(coordinates):
            lo, hi = Float(params[2 * k]), Float(params[2 * k + 1])
            if not lo < hi:
                raise CatalogError(f"Indicator interval ({lo}, {hi}) is empty.")
            conditions.extend((x > lo, x < hi))
        return Piecewise((S.One, And(*conditions)), (S.Zero, True))


class PowerWeight(CatalogEntryBase):
    """Power weight of the distance to the origin."""

    catalog_id = "power-weight"
    kind = "weight"
    formula = "|x|^β"

    @classmethod
    def parameter_names(cls, dim: int) -> tuple[str, ...]:
        return ("β",)

    @classmethod
    def expression(cls, coordinates, params, text=None):  # noqa: ANN001, ANN206, ARG003
        return _norm(coordinates) ** Float(params[0])


class ExpDecayWeight(CatalogEntryBase):
    """Exponentially decaying weight."""

    catalog_id = "exp-decay-weight"
    kind = "weight"
    formula = "exp(-λ|x|)"

    @classmethod
    def parameter_names(cls, dim: int) -> tuple[str, ...]:
        return ("λ",)

    @classmethod
    def expression(cls, coordinates, params, text=None):  # noqa: ANN001, ANN206, ARG003
        return exp(-Float(params[0]) * _norm(coordinates))


class CustomExpression(CatalogEntryBase):
    """Field given as an expression in x, y, z (or x0, x1, x2)."""

    catalog_id = "custom-expression"
    formula = "user expression"

    @classmethod
    def expression(cls, coordinates, params, text=None):  # noqa: ANN001, ANN206, ARG003
        if not text:
            raise CatalogError("A custom-expression needs the expression text.")
        local_dict = {f"x{k}": x for k, x in enumerate(coordinates)}
        local_dict.update(dict(zip(("x", "y", "z"), coordinates)))
        try:
            expr = parse_expr(text, local_dict=local_dict,
                              transformations=_TRANSFORMATIONS)
        except (SyntaxError, TokenError, TypeError, ValueError) as e:
            raise CatalogError(f"Cannot parse expression {text!r}: {e}") from e
        expr = sympify(expr)
        unknown = expr.free_symbols - set(coordinates)
        if unknown:
            raise CatalogError(
                f"Expression {text!r} uses unknown symbols "
                f"{sorted(str(s) for s in unknown)}; only the coordinates "
                f"{[str(x) for x in coordinates]} are allowed.")
        return expr


@dataclass(frozen=True)
class TestFunctionSpec:
    """Request for a catalog field.

    Parameters
    ----------
    catalog_id : str
        Identifier of the catalog entry.
    params : Sequence[float], optional
        Parameters of the entry.
    text : str, optional
        Expression text for ``custom-expression``.
    """

    __test__ = False  # Not a pytest test class.

    catalog_id: str
    params: tuple[float, ...] = ()
    text: str | None = None

    def __post_init__(self) -> None:
        object.__setattr__(self, "params", tuple(float(p) for p in self.params))
        Registry().get_entry(self.catalog_id)

    @property
    def entry(self) -> type[CatalogEntryBase]:
        """Catalog entry named by the spec."""
        return Registry().get_entry(self.catalog_id)

    def validate(self, dim: int) -> None:
        """Check the number of parameters against the entry's arity in ``dim``."""
        names = self.entry.parameter_names(dim)
        if len(self.params) != len(names):
            raise CatalogError(
                f"Catalog entry {self.catalog_id!r} takes {len(names)} parameters "
                f"{list(names)} in {dim}D, got {len(self.params)}.")

    def expression(self, dim: int) -> Expr:
        """SymPy expression of the field in ``dim`` dimensions."""
        self.validate(dim)
        return self.entry.expression(coordinate_symbols(dim), self.params, self.text)

    def to_dict(self) -> dict[str, object]:
        """Return the spec as JSON compatible dictionary."""
        data = {"id": self.catalog_id, "params": list(self.params)}
        if self.text is not None:
            data["expression"] = self.text
        return data


def _evaluate(expr: Expr, domain: BoxDomain) -> np.ndarray:
    coordinates = coordinate_symbols(domain.dim)
    func = lambdify(coordinates, expr, modules="numpy")
    with np.errstate(all="ignore"):
        values = func(*domain.mesh())
    return np.broadcast_to(np.asarray(values, dtype=float), domain.shape)


def sample(spec: TestFunctionSpec, domain: BoxDomain,
           extended: bool = False) -> GridFunction:
    """Evaluate a catalog entry at the cell centers of a domain.

    Parameters
    ----------
    spec : TestFunctionSpec
        Catalog field to sample.
    domain : BoxDomain
        Grid to sample on.
    extended : bool, optional
        Whether ``+inf`` samples are allowed, by default False.

    Returns
    -------
    GridFunction
        Samples of the field.

    Examples
    --------
    >>> from maxsobolev.grid.domains import BoxDomain
    >>> f = sample(TestFunctionSpec("linear", (1.0,)), BoxDomain((0.0,), (1.0,), 4))
    >>> f.values
    array([0.125, 0.375, 0.625, 0.875])
    """
    expr = spec.expression(domain.dim)
    _logger.debug("Sampling %s on %s.", expr, domain)
    return GridFunction(domain, _evaluate(expr, domain), extended=extended)


def exact_gradient(spec: TestFunctionSpec, domain: BoxDomain) -> list[GridFunction]:
    """Analytic gradient of a catalog entry sampled at the cell centers."""
    expr = spec.expression(domain.dim)
    return [GridFunction(domain, _evaluate(expr.diff(x), domain),
                         kind="gradient-component")
            for x in coordinate_symbols(domain.dim)]


def list_entries(kind: str | None = None) -> list[type[CatalogEntryBase]]:
    """Registered catalog entries sorted by id, optionally of one kind only."""
    registry = Registry()
    if kind is not None:
        return registry.get_entries_of_kind(kind)
    return sorted(registry.entries, key=lambda entry: entry.catalog_id)
