"""Module containing the requirement classes used to validate scenario configs."""
from __future__ import annotations

from abc import ABC, abstractmethod
from collections.abc import Callable, Iterable, Mapping

from maxsobolev.core.exceptions import ConfigError

__all__ = ["FieldRequirement", "SectionRequirement"]

_MISSING = object()


class RequirementBase(ABC):
    """Simple class containing the requirement properties of a config field."""

    def __init__(self, field_name: str,
                 field_types: type | tuple[type, ...],
                 description: str | None = None,
                 hard: bool = True,
                 full_name: str | None = None,
                 type_name: str | None = None) -> None:
        """Initialize a new instance of the requirement.

        Parameters
        ----------
        field_name : str
            Key under which the value is stored in the configuration.
        field_types : type | tuple[type, ...]
            Supported types of the value.
        description : str, optional
            Description of the field, by default the first line of the docstring of
            the first type.
        hard : bool, optional
            Whether the requirement is hard, i.e. the field must be present for the
            configuration to be valid, by default True.
        full_name : str, optional
            Full name of the field, by default capitalized version of the field name,
            where the underscores are replaced by spaces.
        type_name : str, optional
            Names of the supported types. The names of the type classes are used by
            default.
        """
        field_name = str(field_name)
        if not field_name.replace("-", "_").isidentifier():
            raise ValueError(f"'{field_name}' is not a valid field name, "
                             f"because it cannot be used as a variable name.")
        self._field_name = field_name
        if not isinstance(field_types, Iterable):
            field_types = (field_types,)
        self._types = tuple(field_types)
        if description is None:
            description = (self.types[0].__doc__ or "").split("\n", 1)[0]
        self._description = str(description)
        self._hard = bool(hard)
        if full_name is None:
            full_name = self.field_name.replace("_", " ").capitalize()
        self._full_name = str(full_name)
        if type_name is None:
            type_name = " or ".join(tp.__name__ for tp in self.types)
        self._type_name = str(type_name)

    @property
    def field_name(self) -> str:
        """Key under which the value is stored in the configuration."""
        return self._field_name

    @property
    def types(self) -> tuple[type, ...]:
        """Supported types of the value."""
        return self._types

    @property
    def description(self) -> str:
        """Description of the field."""
        return self._description

    @property
    def hard(self) -> bool:
        """Boolean whether the requirement is a hard requirement."""
        return self._hard

    @property
    def full_name(self) -> str:
        """Full name of the field."""
        return self._full_name

    @property
    def type_name(self) -> str:
        """Names of the supported types of the field."""
        return self._type_name

    def __str__(self) -> str:
        return self.field_name

    def __repr__(self) -> str:
        return (f"{self.__class__.__name__}(field_name={self.field_name!r}, "
                f"types={self.types!r}, description={self.description!r}, "
                f"hard={self.hard!r})")

    @abstractmethod
    def is_satisfied_by(self, value: object) -> bool:
        """Check whether the value satisfies the requirement.

        Parameters
        ----------
        value : object
            Value to check.

        Returns
        -------
        bool
            Whether the value satisfies the requirement.
        """

    def extract(self, config: Mapping[str, object], prefix: str = "") -> object:
        """Return the validated value of the field from a configuration mapping.

        Parameters
        ----------
        config : Mapping[str, object]
            Configuration section that should contain the field.
        prefix : str, optional
            Dotted path of the section, used in error messages.

        Returns
        -------
        object
            The value, or None for an absent soft requirement.
        """
        name = f"{prefix}{self.field_name}"
        value = config.get(self.field_name, _MISSING)
        if value is _MISSING:
            if self.hard:
                raise ConfigError(name, f"missing required field ({self.description})")
            return None
        if not self.is_satisfied_by(value):
            raise ConfigError(
                name, f"expected {self.type_name}, but got {value!r}")
        return value


class FieldRequirement(RequirementBase):
    """Class representing a requirement for a scalar or list field."""

    def __init__(self, field_name: str,
                 field_types: type | tuple[type, ...],
                 description: str | None = None,
                 hard: bool = True,
                 check: Callable[[object], bool] | None = None,
                 **kwargs: object) -> None:
        """Initialize a field requirement.

        Parameters
        ----------
        field_name, field_types, description, hard
            See :class:`RequirementBase`.
        check : Callable[[object], bool], optional
            Additional predicate the value must satisfy, e.g. a range check.
        **kwargs
            Passed on to :class:`RequirementBase`.
        """
        super().__init__(field_name, field_types, description, hard, **kwargs)
        self._check = check

    def is_satisfied_by(self, value: object) -> bool:
        """Check whether the value has a supported type and passes the check."""
        # bool is an int subclass, but never a valid number in a config.
        if isinstance(value, bool) and bool not in self.types:
            return False
        if not isinstance(value, self.types):
            return False
        return self._check is None or bool(self._check(value))


class SectionRequirement(RequirementBase):
    """Class representing a requirement for a nested configuration section."""

    def __init__(self, field_name: str,
                 fields: tuple[RequirementBase, ...],
                 description: str | None = None,
                 hard: bool = True,
                 **kwargs: object) -> None:
        """Initialize a section requirement.

        Parameters
        ----------
        field_name, description, hard
            See :class:`RequirementBase`.
        fields : tuple[RequirementBase, ...]
            Requirements of the keys inside the section.
        **kwargs
            Passed on to :class:`RequirementBase`.
        """
        super().__init__(field_name, dict, description, hard,
                         type_name="section", **kwargs)
        self._fields = tuple(fields)

    @property
    def fields(self) -> tuple[RequirementBase, ...]:
        """Requirements of the keys inside the section."""
        return self._fields

    def is_satisfied_by(self, value: object) -> bool:
        """Check whether the value is a mapping."""
        return isinstance(value, Mapping)

    def extract(self, config: Mapping[str, object], prefix: str = ""
                ) -> dict[str, object] | None:
        """Return the validated section, rejecting unknown keys."""
        section = super().extract(config, prefix)
        if section is None:
            return None
        path = f"{prefix}{self.field_name}."
        known = {req.field_name for req in self.fields}
        for key in section:
            if key not in known:
                raise ConfigError(f"{path}{key}", "unknown key")
        return {req.field_name: req.extract(section, path) for req in self.fields}
