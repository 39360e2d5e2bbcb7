"""Loading and validation of scenario configuration files.

A configuration is a JSON object with the key ``scenario`` naming the scenario and the
fields required by that scenario, see :attr:`ScenarioBase.required_fields`. Unknown
keys are rejected and every error names the offending field.
"""
from __future__ import annotations

import json
import logging
from typing import TYPE_CHECKING, NamedTuple

from maxsobolev.core.exceptions import ConfigError
from maxsobolev.core.registry import Registry
from maxsobolev.core.requirement import FieldRequirement, SectionRequirement
from maxsobolev.grid.catalog import TestFunctionSpec
from maxsobolev.grid.domains import BoxDomain
from maxsobolev.weights.spec import FAMILIES, WeightSpec

if TYPE_CHECKING:
    from collections.abc import Callable, Mapping
    from pathlib import Path

    from maxsobolev.core.base_classes import ScenarioBase

__all__ = [
    "DOMAIN",
    "FUNCTION",
    "GRANDIZER",
    "NUMBER",
    "Q",
    "REQUIRED_WEIGHT",
    "WEIGHT",
    "ScenarioConfig",
    "build",
    "build_domain",
    "build_function",
    "build_weight",
    "load_config",
    "positive",
    "validate_config",
]

_logger = logging.getLogger(__name__)


def _numbers(value: object) -> bool:
    return all(isinstance(v, (int, float)) and not isinstance(v, bool) for v in value)


def positive(value: float) -> bool:
    """Whether a number is positive."""
    return value > 0


def _resolution(value: object) -> bool:
    values = value if isinstance(value, list) else [value]
    return all(isinstance(v, int) and not isinstance(v, bool) and v > 0
               for v in values)


DOMAIN = SectionRequirement("domain", (
    FieldRequirement("lower", list, "Lower corner of the box", check=_numbers),
    FieldRequirement("upper", list, "Upper corner of the box", check=_numbers),
    FieldRequirement("resolution", (int, list), "Cells per axis",
                     check=_resolution),
), "Computational box")
FUNCTION = SectionRequirement("function", (
    FieldRequirement("id", str, "Catalog id"),
    FieldRequirement("params", list, "Catalog parameters", hard=False,
                     check=_numbers),
    FieldRequirement("expression", str, "Expression of a custom-expression",
                     hard=False),
), "Catalog field")
_WEIGHT_FIELDS = (
    FieldRequirement("family", str, "Weight family or weight catalog id"),
    FieldRequirement("params", list, "Family parameters", hard=False, check=_numbers),
)
WEIGHT = SectionRequirement("weight", _WEIGHT_FIELDS, "Weight", hard=False)
REQUIRED_WEIGHT = SectionRequirement("weight", _WEIGHT_FIELDS, "Weight")
GRANDIZER = SectionRequirement("grandizer", _WEIGHT_FIELDS, "Grandizer", hard=False)
Q = FieldRequirement("q", (int, float), "Exponent larger than one",
                     check=lambda v: v > 1)
NUMBER = (int, float)


class ScenarioConfig(NamedTuple):
    """A validated configuration: the scenario class and its field values."""

    scenario: type[ScenarioBase]
    values: dict[str, object]

    def create(self, output_dir: Path) -> ScenarioBase:
        """Instantiate the scenario writing into ``output_dir``."""
        return self.scenario(self.values, output_dir)


def validate_config(config: Mapping[str, object]) -> ScenarioConfig:
    """Validate a configuration mapping against the fields of its scenario.

    Parameters
    ----------
    config : Mapping[str, object]
        Parsed configuration.

    Returns
    -------
    ScenarioConfig
        The scenario class and the extracted fields, absent soft fields as None.
    """
    if not isinstance(config, dict):
        raise ConfigError("config", "expected a JSON object")
    name = FieldRequirement("scenario", str, "Scenario name").extract(config)
    scenario = Registry().get_scenario(name)
    known = {"scenario"} | {req.field_name for req in scenario.required_fields}
    for key in config:
        if key not in known:
            raise ConfigError(key, f"unknown key for scenario {name!r}")
    values = {req.field_name: req.extract(config) for req in scenario.required_fields}
    return ScenarioConfig(scenario, values)


def load_config(path: Path) -> ScenarioConfig:
    """Read and validate a JSON configuration file."""
    try:
        config = json.loads(path.read_text(encoding="utf-8"))
    except OSError as e:
        raise ConfigError("config", f"cannot read {path}: {e}") from e
    except json.JSONDecodeError as e:
        raise ConfigError("config", f"invalid JSON in {path}: {e}") from e
    _logger.debug("Loaded configuration %s.", path)
    return validate_config(config)


def build(field: str, factory: Callable[..., object], *args: object,
          **kwargs: object) -> object:
    """Call a constructor and report its ``ValueError`` as a config error on a field."""
    try:
        return factory(*args, **kwargs)
    except ConfigError:
        raise
    except ValueError as e:
        raise ConfigError(field, str(e)) from e


def build_domain(section: Mapping[str, object]) -> BoxDomain:
    """Box of a validated ``domain`` section."""
    return build("domain", BoxDomain, section["lower"], section["upper"],
                 section["resolution"])


def build_function(section: Mapping[str, object], dim: int) -> TestFunctionSpec:
    """Catalog field of a validated ``function`` section."""
    spec = build("function.id", TestFunctionSpec, section["id"],
                 section["params"] or (), section["expression"])
    build("function.params", spec.expression, dim)
    return spec


def build_weight(section: Mapping[str, object] | None, field: str = "weight"
                 ) -> WeightSpec | None:
    """Weight of a validated ``weight`` or ``grandizer`` section, if present."""
    if section is None:
        return None
    family, params = section["family"], section["params"] or ()
    if family in FAMILIES:
        if family == "grid":
            raise ConfigError(f"{field}.family", "grid weights cannot be configured")
        return build(field, WeightSpec, family, params)
    spec = build(f"{field}.family", TestFunctionSpec, family, params)
    return build(field, WeightSpec.from_catalog, spec)
