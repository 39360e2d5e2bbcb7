"""Lebesgue, grand Lebesgue, Sobolev and grand Sobolev norms."""

__all__ = [
    "EpsilonGrid", "EpsilonProfile", "grand_norm", "lq_norm", "maximize_profile",
    "equivalence_check", "grand_sobolev_profiles", "grand_sobolev_sum",
    "grand_sobolev_sup", "sobolev_norm",
]

from maxsobolev.norms.lebesgue import (
    EpsilonGrid,
    EpsilonProfile,
    grand_norm,
    lq_norm,
    maximize_profile,
)
from maxsobolev.norms.sobolev import (
    equivalence_check,
    grand_sobolev_profiles,
    grand_sobolev_sum,
    grand_sobolev_sup,
    sobolev_norm,
)
