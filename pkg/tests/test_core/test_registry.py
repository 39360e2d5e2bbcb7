from __future__ import annotations

import pytest
from sympy import Float

import maxsobolev.cli.scenarios  # noqa: F401
from maxsobolev.core import (
    CatalogEntryBase,
    CatalogError,
    ConfigError,
    Registry,
    ScenarioBase,
)
from maxsobolev.grid.catalog import BumpFunction, IndicatorFunction, PowerWeight


class TestRegistry:
    def test_registry_is_shared(self) -> None:
        assert Registry() is Registry()

    @pytest.mark.parametrize("entry", [BumpFunction, IndicatorFunction, PowerWeight])
    def test_entries_registered(self, entry) -> None:
        assert entry in Registry().entries
        assert Registry().get_entry(entry.catalog_id) is entry

    @pytest.mark.parametrize("name", ["norm", "grand-norm", "maximal", "aq",
                                      "hajlasz-verify", "hedberg", "poincare",
                                      "embed", "probe", "bench"])
    def test_scenarios_registered(self, name) -> None:
        assert Registry().get_scenario(name).name == name

    def test_base_classes_not_registered(self) -> None:
        assert CatalogEntryBase not in Registry().entries
        assert ScenarioBase not in Registry().scenarios

    def test_unknown_entry(self) -> None:
        with pytest.raises(CatalogError, match="Unknown catalog id"):
            Registry().get_entry("not-an-entry")

    def test_entry_of_wrong_kind(self) -> None:
        with pytest.raises(CatalogError, match="is a function, not a weight"):
            Registry().get_entry("bump", kind="weight")

    def test_unknown_scenario(self) -> None:
        with pytest.raises(ConfigError) as e:
            Registry().get_scenario("not-a-scenario")
        assert e.value.field == "scenario"

    @pytest.mark.parametrize(("kind", "member", "non_member"), [
        ("function", BumpFunction, PowerWeight),
        ("weight", PowerWeight, BumpFunction),
    ])
    def test_get_entries_of_kind(self, kind, member, non_member) -> None:
        entries = Registry().get_entries_of_kind(kind)
        assert member in entries
        assert non_member not in entries
        ids = [entry.catalog_id for entry in entries]
        assert ids == sorted(ids)


class TestIsolatedRegistry:
    def test_isolated_is_active(self) -> None:
        outer = Registry()
        with Registry.isolated() as registry:
            assert Registry() is registry
            assert registry is not outer
        assert Registry() is outer

    def test_isolated_sees_existing_entries(self) -> None:
        with Registry.isolated() as registry:
            assert registry.get_entry("bump") is BumpFunction

    def test_isolated_drops_new_entries(self) -> None:
        with Registry.isolated():
            class TwoFunction(CatalogEntryBase):
                catalog_id = "two"

                @classmethod
                def expression(cls, coordinates, params, text=None):  # noqa: ARG003
                    return Float(2)

            assert Registry().get_entry("two") is TwoFunction
        with pytest.raises(CatalogError):
            Registry().get_entry("two")

    def test_duplicate_id_rejected(self) -> None:
        with Registry.isolated(), pytest.raises(CatalogError, match="already taken"):
            class OtherBump(CatalogEntryBase):
                catalog_id = "bump"

                @classmethod
                def expression(cls, coordinates, params, text=None):  # noqa: ARG003
                    return Float(0)
