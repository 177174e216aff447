"""Constructive colorings: generic product colorings, tilings and mined patterns."""

from .frobenius import FrobeniusPair, NoDecompositionError, frobenius_decompose
from .generic import (
    ConstructionError,
    FactorColorings,
    RepairState,
    generic_cartesian_coloring,
    merged_cartesian_coloring,
    pair_coloring,
    tensor_algorithm1,
)

__all__ = [
    "ConstructionError",
    "FactorColorings",
    "FrobeniusPair",
    "NoDecompositionError",
    "RepairState",
    "frobenius_decompose",
    "generic_cartesian_coloring",
    "merged_cartesian_coloring",
    "pair_coloring",
    "tensor_algorithm1",
]
