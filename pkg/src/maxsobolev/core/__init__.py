"""Module containing the core elements of maxsobolev."""

__all__ = [
    "Registry", "RegistryMeta",
    "FieldRequirement", "SectionRequirement",
    "CatalogEntryBase", "CatalogMeta", "ScenarioBase", "ScenarioMeta",
    "EmbeddingReport", "GrandNormResult", "HajlaszReport", "MuckenhouptEstimate",
    "ScenarioOutcome", "VerificationReport", "to_jsonable",
    "BudgetError", "CatalogError", "ConfigError", "DegenerateBallWarning",
    "DivergentEstimateError", "DomainError", "EndpointSupremumWarning",
    "LipschitzDataError", "ResolutionError", "VerificationError",
]

from maxsobolev.core.base_classes import (
    CatalogEntryBase,
    CatalogMeta,
    ScenarioBase,
    ScenarioMeta,
)
from maxsobolev.core.exceptions import (
    BudgetError,
    CatalogError,
    ConfigError,
    DegenerateBallWarning,
    DivergentEstimateError,
    DomainError,
    EndpointSupremumWarning,
    LipschitzDataError,
    ResolutionError,
    VerificationError,
)
from maxsobolev.core.registry import Registry, RegistryMeta
from maxsobolev.core.reports import (
    EmbeddingReport,
    GrandNormResult,
    HajlaszReport,
    MuckenhouptEstimate,
    ScenarioOutcome,
    VerificationReport,
    to_jsonable,
)
from maxsobolev.core.requirement import FieldRequirement, SectionRequirement
