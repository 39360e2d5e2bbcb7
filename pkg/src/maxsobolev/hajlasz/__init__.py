"""Pointwise characterization of Sobolev functions by Hajłasz gradients."""

__all__ = [
    "hajlasz_constant", "hajlasz_gradient", "hedberg_check", "mean_oscillation_check",
    "poincare_constant", "poincare_pointwise_check", "riesz_potential",
    "PairSample", "absolute_value_check", "lipschitz_on_truncation_check",
    "sample_pairs", "truncation_sets", "verify_pointwise",
    "McShaneExtension", "derivative_bound_check", "mcshane_extend",
]

from maxsobolev.hajlasz.converse import (
    McShaneExtension,
    derivative_bound_check,
    mcshane_extend,
)
from maxsobolev.hajlasz.pairs import (
    PairSample,
    absolute_value_check,
    lipschitz_on_truncation_check,
    sample_pairs,
    truncation_sets,
    verify_pointwise,
)
from maxsobolev.hajlasz.potentials import (
    hajlasz_constant,
    hajlasz_gradient,
    hedberg_check,
    mean_oscillation_check,
    poincare_constant,
    poincare_pointwise_check,
    riesz_potential,
)
