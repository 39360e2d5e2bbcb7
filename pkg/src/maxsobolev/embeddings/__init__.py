"""Embeddings of weighted Lebesgue and Sobolev spaces into their grand versions."""

__all__ = [
    "chain_check", "local_integrability_check", "local_sobolev_check",
    "sobolev_embedding_check", "upper_embedding_check",
    "maximal_boundedness_probe", "stress_family",
]

from maxsobolev.embeddings.inequalities import (
    chain_check,
    local_integrability_check,
    local_sobolev_check,
    sobolev_embedding_check,
    upper_embedding_check,
)
from maxsobolev.embeddings.probe import maximal_boundedness_probe, stress_family
