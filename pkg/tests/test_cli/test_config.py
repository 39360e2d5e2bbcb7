from __future__ import annotations

import pytest

from maxsobolev.cli.config import (
    ScenarioConfig,
    build_domain,
    build_function,
    build_weight,
    load_config,
    validate_config,
)
from maxsobolev.cli.scenarios import GrandNormScenario, NormScenario
from maxsobolev.core import ConfigError
from maxsobolev.weights import WeightSpec

LINE = {"lower": [0.0], "upper": [1.0], "resolution": 64}


def _norm_config(**kwargs: object) -> dict[str, object]:
    return {"scenario": "norm", "domain": LINE,
            "function": {"id": "sine", "params": [3.0]}, "q": 2, **kwargs}


class TestValidateConfig:
    def test_valid(self) -> None:
        scenario, values = validate_config(_norm_config())
        assert scenario is NormScenario
        assert values["q"] == 2
        assert values["weight"] is None
        assert values["function"] == {"id": "sine", "params": [3.0],
                                      "expression": None}

    def test_soft_sections(self) -> None:
        scenario, values = validate_config({
            **_norm_config(scenario="grand-norm"),
            "grandizer": {"family": "power", "params": [0.5]}, "eps_points": 16})
        assert scenario is GrandNormScenario
        assert values["grandizer"] == {"family": "power", "params": [0.5]}
        assert values["normalize"] is None

    def test_create(self, tmp_path) -> None:
        config = validate_config(_norm_config())
        assert isinstance(config, ScenarioConfig)
        scenario = config.create(tmp_path)
        assert isinstance(scenario, NormScenario)
        assert scenario.domain.resolution == (64,)

    @pytest.mark.parametrize(("config", "field"), [
        ({"domain": LINE}, "scenario"),
        (_norm_config(scenario="unknown"), "scenario"),
        (_norm_config(extra=1), "extra"),
        ({k: v for k, v in _norm_config().items() if k != "q"}, "q"),
        (_norm_config(q=1), "q"),
        (_norm_config(q=True), "q"),
        (_norm_config(q="2"), "q"),
        (_norm_config(domain={**LINE, "resolution": 0}), "domain.resolution"),
        (_norm_config(domain={**LINE, "size": 3}), "domain.size"),
        (_norm_config(function={"params": [1.0]}), "function.id"),
        (_norm_config(weight={"family": "power", "params": ["a"]}), "weight.params"),
    ])
    def test_invalid(self, config, field) -> None:
        with pytest.raises(ConfigError) as excinfo:
            validate_config(config)
        assert excinfo.value.field == field

    def test_not_an_object(self) -> None:
        with pytest.raises(ConfigError, match="JSON object"):
            validate_config([1, 2])


class TestLoadConfig:
    def test_round_trip(self, write_config) -> None:
        scenario, _ = load_config(write_config(_norm_config()))
        assert scenario.name == "norm"

    def test_invalid_json(self, tmp_path) -> None:
        path = tmp_path / "broken.json"
        path.write_text("{\"scenario\": ", encoding="utf-8")
        with pytest.raises(ConfigError, match="invalid JSON"):
            load_config(path)

    def test_missing_file(self, tmp_path) -> None:
        with pytest.raises(ConfigError, match="cannot read"):
            load_config(tmp_path / "missing.json")


class TestBuilders:
    def test_domain(self) -> None:
        domain = build_domain({"lower": [0, 0], "upper": [1, 2],
                               "resolution": [4, 8]})
        assert domain.shape == (4, 8)

    def test_invalid_domain(self) -> None:
        with pytest.raises(ConfigError) as excinfo:
            build_domain({"lower": [1.0], "upper": [0.0], "resolution": 4})
        assert excinfo.value.field == "domain"

    def test_function_arity(self) -> None:
        with pytest.raises(ConfigError) as excinfo:
            build_function({"id": "bump", "params": [1.0], "expression": None}, 1)
        assert excinfo.value.field == "function.params"

    def test_unknown_function(self) -> None:
        with pytest.raises(ConfigError) as excinfo:
            build_function({"id": "nope", "params": None, "expression": None}, 1)
        assert excinfo.value.field == "function.id"

    def test_custom_expression(self) -> None:
        spec = build_function({"id": "custom-expression", "params": None,
                               "expression": "x**2 + 1"}, 1)
        assert spec.text == "x**2 + 1"

    def test_absent_weight(self) -> None:
        assert build_weight(None) is None

    @pytest.mark.parametrize(("section", "family", "params"), [
        ({"family": "power", "params": [0.5]}, "power", (0.5,)),
        ({"family": "exp-decay", "params": [2]}, "exp-decay", (2.0,)),
        ({"family": "power-weight", "params": [0.5]}, "power", (0.5,)),
    ])
    def test_weight(self, section, family, params) -> None:
        weight = build_weight(section)
        assert isinstance(weight, WeightSpec)
        assert (weight.family, weight.params) == (family, params)

    def test_grid_weight(self) -> None:
        with pytest.raises(ConfigError) as excinfo:
            build_weight({"family": "grid", "params": None}, "grandizer")
        assert excinfo.value.field == "grandizer.family"
