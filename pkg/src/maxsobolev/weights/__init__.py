"""Weights and the estimation of their Muckenhoupt constants."""

__all__ = [
    "CompositeWeight", "Weight", "WeightSpec", "as_weight", "sample_weight",
    "CubeFamily", "aq_box_value", "aq_constant", "aq_properties_check",
    "find_power_improvement", "find_self_improvement", "grandizer_exponent_search",
]

from maxsobolev.weights.muckenhoupt import (
    CubeFamily,
    aq_box_value,
    aq_constant,
    aq_properties_check,
    find_power_improvement,
    find_self_improvement,
    grandizer_exponent_search,
)
from maxsobolev.weights.spec import (
    CompositeWeight,
    Weight,
    WeightSpec,
    as_weight,
    sample_weight,
)
