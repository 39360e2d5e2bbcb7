"""maxsobolev.

Numerical checks of the pointwise characterization of Sobolev functions through the
Hardy-Littlewood maximal function, of Muckenhoupt weights and of weighted generalized
grand Lebesgue and Sobolev norms on Cartesian grids.
"""

from __future__ import annotations

__all__ = [
    "Ball",
    "BoxDomain",
    "CompositeWeight",
    "EpsilonGrid",
    "GridFunction",
    "MaximalConfig",
    "TestFunctionSpec",
    "WeightSpec",
    "__version__",
    "aq_constant",
    "grand_norm",
    "grand_sobolev_sup",
    "hajlasz_gradient",
    "maximal_field",
    "sample",
    "sample_pairs",
    "sample_weight",
    "verify_pointwise",
]
from maxsobolev.grid import Ball, BoxDomain, GridFunction, TestFunctionSpec, sample
from maxsobolev.hajlasz import hajlasz_gradient, sample_pairs, verify_pointwise
from maxsobolev.maximal import MaximalConfig, maximal_field
from maxsobolev.norms import EpsilonGrid, grand_norm, grand_sobolev_sup
from maxsobolev.weights import CompositeWeight, WeightSpec, aq_constant, sample_weight

from ._version import version as __version__
