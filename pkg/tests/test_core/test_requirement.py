from __future__ import annotations

import re

import pytest

from maxsobolev.core import ConfigError, FieldRequirement, SectionRequirement


class TestFieldRequirement:
    def test_default(self) -> None:
        req = FieldRequirement("grid_size", int, "Number of cells.")
        assert req.field_name == "grid_size"
        assert req.types == (int,)
        assert req.description == "Number of cells."
        assert req.hard is True
        assert req.full_name == "Grid size"
        assert req.type_name == "int"
        assert str(req) == "grid_size"
        assert re.match(r"FieldRequirement\(.+\)$", repr(req))

    def test_properties(self) -> None:
        req = FieldRequirement("q", float)
        properties = {name for cls in type(req).__mro__
                      for name, attr in vars(cls).items() if isinstance(attr, property)}
        assert properties == {"field_name", "types", "description", "hard",
                              "full_name", "type_name"}

    @pytest.mark.parametrize(("kwargs", "attribute", "expected"), [
        ({"description": "New desc."}, "description", "New desc."),
        ({"full_name": "New name"}, "full_name", "New name"),
        ({"type_name": "New type"}, "type_name", "New type"),
        ({"hard": False}, "hard", False),
    ])
    def test_specify_args(self, kwargs, attribute, expected) -> None:
        req = FieldRequirement("q", float, **kwargs)
        assert getattr(req, attribute) == expected

    def test_multiple_types(self) -> None:
        req = FieldRequirement("q", (int, float))
        assert req.types == (int, float)
        assert req.type_name == "int or float"

    @pytest.mark.parametrize("field_name", ["grand norm", "q,eps"])
    def test_invalid_field_name(self, field_name) -> None:
        with pytest.raises(ValueError):
            FieldRequirement(field_name, float)

    def test_hyphenated_field_name(self) -> None:
        assert FieldRequirement("eps-points", int).field_name == "eps-points"

    @pytest.mark.parametrize(("value", "expected"), [
        (2, True), (2.5, True), ("2", False), (True, False), (None, False),
    ])
    def test_is_satisfied_by_type(self, value, expected) -> None:
        req = FieldRequirement("q", (int, float))
        assert req.is_satisfied_by(value) is expected

    def test_bool_allowed_when_listed(self) -> None:
        assert FieldRequirement("normalize", bool).is_satisfied_by(False)

    @pytest.mark.parametrize(("value", "expected"), [(2.0, True), (1.0, False)])
    def test_check(self, value, expected) -> None:
        req = FieldRequirement("q", float, check=lambda v: v > 1)
        assert req.is_satisfied_by(value) is expected

    def test_extract(self) -> None:
        req = FieldRequirement("q", float)
        assert req.extract({"q": 2.0}) == 2.0

    def test_extract_missing_soft(self) -> None:
        assert FieldRequirement("q", float, hard=False).extract({}) is None

    def test_extract_missing_hard(self) -> None:
        with pytest.raises(ConfigError, match="missing required field") as e:
            FieldRequirement("q", float).extract({}, prefix="run.")
        assert e.value.field == "run.q"

    def test_extract_wrong_type(self) -> None:
        with pytest.raises(ConfigError, match="expected float") as e:
            FieldRequirement("q", float).extract({"q": "two"})
        assert e.value.field == "q"


class TestSectionRequirement:
    @pytest.fixture(autouse=True)
    def _setup(self) -> None:
        self.req = SectionRequirement("weight", (
            FieldRequirement("family", str),
            FieldRequirement("params", list, hard=False),
        ), "Weight section.")

    def test_default(self) -> None:
        assert self.req.types == (dict,)
        assert self.req.type_name == "section"
        assert [str(f) for f in self.req.fields] == ["family", "params"]

    def test_extract(self) -> None:
        section = self.req.extract({"weight": {"family": "power"}})
        assert section == {"family": "power", "params": None}

    def test_extract_unknown_key(self) -> None:
        with pytest.raises(ConfigError) as e:
            self.req.extract({"weight": {"family": "power", "beta": 0.5}})
        assert e.value.field == "weight.beta"

    def test_extract_nested_missing(self) -> None:
        with pytest.raises(ConfigError) as e:
            self.req.extract({"weight": {}})
        assert e.value.field == "weight.family"

    def test_extract_not_a_section(self) -> None:
        with pytest.raises(ConfigError, match="expected section"):
            self.req.extract({"weight": [1, 2]})

    def test_soft_section_absent(self) -> None:
        req = SectionRequirement("weight", (), hard=False)
        assert req.extract({}) is None
