"""Module containing the base classes of catalog entries and scenarios."""
from __future__ import annotations

from abc import ABCMeta, abstractmethod
from typing import TYPE_CHECKING, ClassVar

from maxsobolev.core.registry import Registry

if TYPE_CHECKING:
    from collections.abc import Sequence
    from pathlib import Path

    from sympy import Expr, Symbol

    from maxsobolev.core.reports import ScenarioOutcome
    from maxsobolev.core.requirement import RequirementBase

__all__ = ["CatalogEntryBase", "CatalogMeta", "ScenarioBase", "ScenarioMeta"]


def _get_requirements(bases, namespace, req_attr_name):  # noqa: ANN001, ANN202
    requirements = {}
    for base_cls in bases:
        base_reqs = getattr(base_cls, req_attr_name, None)
        if base_reqs is not None:
            for req in base_reqs:
                requirements[req.field_name] = req
    if req_attr_name in namespace:
        for req in namespace[req_attr_name]:
            requirements[req.field_name] = req
    return tuple(requirements.values())


class CatalogMeta(ABCMeta):
    """Metaclass for the :class:`maxsobolev.core.base_classes.CatalogEntryBase`."""

    def __new__(mcs, name, bases, namespace, **kwargs):  # noqa: ANN001, ANN003, ANN204, N804
        """Create a new class."""
        instance = super().__new__(mcs, name, bases, namespace, **kwargs)
        Registry().register_entry(instance)
        return instance


class ScenarioMeta(ABCMeta):
    """Metaclass for the :class:`maxsobolev.core.base_classes.ScenarioBase`."""

    def __new__(mcs, name, bases, namespace, **kwargs):  # noqa: ANN001, ANN003, ANN204, N804
        """Create a new class."""
        namespace["required_fields"] = _get_requirements(
            bases, namespace, "required_fields")
        instance = super().__new__(mcs, name, bases, namespace, **kwargs)
        Registry().register_scenario(instance)
        return instance


class CatalogEntryBase(metaclass=CatalogMeta):
    """Base class of the analytic test functions and weights.

    Subclasses describe a closed-form field as a SymPy expression in the coordinate
    symbols. They are never instantiated; the class itself is the catalog entry.
    """

    catalog_id: ClassVar[str] = ""
    kind: ClassVar[str] = "function"
    formula: ClassVar[str] = ""

    @classmethod
    def parameter_names(cls, dim: int) -> tuple[str, ...]:
        """Names of the parameters of the entry in a ``dim``-dimensional domain."""
        return ()

    @classmethod
    def arity(cls, dim: int) -> int:
        """Number of parameters of the entry in a ``dim``-dimensional domain."""
        return len(cls.parameter_names(dim))

    @classmethod
    def describe(cls) -> str:
        """One line description used in the catalog listing."""
        names = ", ".join(cls.parameter_names(1))
        return f"{cls.catalog_id}: {cls.formula}, params [{names}]"

    @classmethod
    def to_dict(cls) -> dict[str, object]:
        """Machine readable description of the entry."""
        return {
            "id": cls.catalog_id,
            "kind": cls.kind,
            "formula": cls.formula,
            "params": {str(dim): list(cls.parameter_names(dim)) for dim in (1, 2, 3)},
            "description": (cls.__doc__ or "").split("\n", 1)[0],
        }

    @classmethod
    @abstractmethod
    def expression(cls, coordinates: Sequence[Symbol], params: Sequence[float],
                   text: str | None = None) -> Expr:
        """Return the closed-form expression of the entry.

        Parameters
        ----------
        coordinates : Sequence[Symbol]
            Coordinate symbols, one per axis of the domain.
        params : Sequence[float]
            Parameters of the entry, already validated against the arity.
        text : str, optional
            Source text of the expression, only used by ``custom-expression``.

        Returns
        -------
        Expr
            SymPy expression of the field.
        """


class ScenarioBase(metaclass=ScenarioMeta):
    """Base class of the scenarios runnable from the command line."""

    name: ClassVar[str] = ""
    required_fields: ClassVar[tuple[RequirementBase, ...]] = ()

    def __init__(self, config: dict[str, object], output_dir: Path) -> None:
        """Create a new scenario run.

        Parameters
        ----------
        config : dict[str, object]
            Validated configuration, see
            :func:`maxsobolev.cli.config.load_config`.
        output_dir : Path
            Directory the report files are written to.
        """
        self.config = config
        self.output_dir = output_dir

    def __repr__(self) -> str:
        return f"{self.__class__.__name__}(output_dir={self.output_dir!r})"

    @abstractmethod
    def run(self) -> ScenarioOutcome:
        """Execute the scenario and return its outcome."""
