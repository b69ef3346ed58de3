"""Maximum S-path packing through a linear matroid parity reduction over a small prime field."""

from .instance import Instance, Packing, parse, random_instance, serialize, validate_packing
from .oracle import brute_force_packing
from .solver import SolveConfig, SolveReport, solve

__all__ = [
    "Instance", "Packing", "parse", "serialize", "random_instance", "validate_packing",
    "brute_force_packing", "solve", "SolveConfig", "SolveReport",
]
