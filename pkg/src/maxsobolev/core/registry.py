"""Registry to keep track of all catalog entries and scenarios in maxsobolev."""
from __future__ import annotations

from contextlib import contextmanager
from typing import TYPE_CHECKING, ClassVar

from typing_extensions import Self

from maxsobolev.core.exceptions import CatalogError, ConfigError

if TYPE_CHECKING:
    from collections.abc import Iterator

    from maxsobolev.core.base_classes import CatalogEntryBase, ScenarioBase

__all__ = ["Registry", "RegistryMeta"]


class RegistryMeta(type):
    """Metaclass returning the active registry instead of a new instance."""

    _active: ClassVar[dict[type, object]] = {}

    def __call__(cls) -> Self:
        """Return the active registry, creating it on first use."""
        if cls not in cls._active:
            cls._active[cls] = super().__call__()
        return cls._active[cls]

    @contextmanager
    def isolated(cls) -> Iterator[Self]:
        """Temporarily activate a copy of the registry.

        Entries and scenarios registered inside the ``with`` block are dropped once
        it exits, while everything registered before stays visible inside it.

        Examples
        --------
        >>> with Registry.isolated() as registry:
        ...     registry is Registry()
        True
        """
        previous = cls()
        scoped = super().__call__()
        scoped._entries.update(previous._entries)
        scoped._scenarios.update(previous._scenarios)
        cls._active[cls] = scoped
        try:
            yield scoped
        finally:
            cls._active[cls] = previous


class Registry(metaclass=RegistryMeta):
    """Registry to keep track of all catalog entries and scenarios in maxsobolev."""

    def __init__(self) -> None:
        self._entries: dict[str, type[CatalogEntryBase]] = {}
        self._scenarios: dict[str, type[ScenarioBase]] = {}

    def register_entry(self, entry: type[CatalogEntryBase]) -> None:
        """Register a new catalog entry, keyed by its catalog id."""
        if not entry.catalog_id:
            return
        existing = self._entries.get(entry.catalog_id)
        if existing is not None and existing.__qualname__ != entry.__qualname__:
            raise CatalogError(
                f"Catalog id {entry.catalog_id!r} is already taken by {existing}.")
        self._entries[entry.catalog_id] = entry

    def register_scenario(self, scenario: type[ScenarioBase]) -> None:
        """Register a new scenario, keyed by its name."""
        if scenario.name:
            self._scenarios[scenario.name] = scenario

    @property
    def entries(self) -> frozenset[type[CatalogEntryBase]]:
        """Return the registered catalog entries."""
        return frozenset(self._entries.values())

    @property
    def scenarios(self) -> frozenset[type[ScenarioBase]]:
        """Return the registered scenarios."""
        return frozenset(self._scenarios.values())

    def get_entry(self, catalog_id: str, kind: str | None = None
                  ) -> type[CatalogEntryBase]:
        """Return the catalog entry registered under ``catalog_id``.

        Parameters
        ----------
        catalog_id : str
            Identifier of the entry, e.g. ``"bump"`` or ``"power-weight"``.
        kind : str, optional
            If given, the entry must be of this kind (``"function"`` or ``"weight"``).

        Returns
        -------
        type[CatalogEntryBase]
            The registered entry class.
        """
        try:
            entry = self._entries[catalog_id]
        except KeyError:
            raise CatalogError(
                f"Unknown catalog id {catalog_id!r}, expected one of "
                f"{sorted(self._entries)}.") from None
        if kind is not None and entry.kind != kind:
            raise CatalogError(
                f"Catalog entry {catalog_id!r} is a {entry.kind}, not a {kind}.")
        return entry

    def get_scenario(self, name: str) -> type[ScenarioBase]:
        """Return the scenario registered under ``name``."""
        try:
            return self._scenarios[name]
        except KeyError:
            raise ConfigError(
                "scenario", f"unknown scenario {name!r}, expected one of "
                f"{sorted(self._scenarios)}") from None

    def get_entries_of_kind(self, kind: str) -> list[type[CatalogEntryBase]]:
        """Return all entries of a kind, sorted by catalog id.

        Parameters
        ----------
        kind : str
            ``"function"`` or ``"weight"``.

        Returns
        -------
        list[type[CatalogEntryBase]]
            Entries of the given kind.
        """
        return [entry for cid, entry in sorted(self._entries.items())
                if entry.kind == kind]
