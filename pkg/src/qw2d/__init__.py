"""Two-dimensional coined quantum walk and exhaustive checks of its discrete Ito identities."""

from .coins import (
    ClassicalWeights,
    Coin,
    WalkOperators,
    build_walk_operators,
    coin_hadamard,
    coin_identity,
    coin_random,
    make_coin,
)
from .functions import LatticeFunction, function_registry
from .ito import Axis
from .paths import Path1D, PathPair, path_from_index, path_pair
from .position import Distribution, LatticeState, Qubit4, distribution, evolve, init_state, step
from .reports import IdentityReport

__all__ = [
    "Axis",
    "ClassicalWeights",
    "Coin",
    "Distribution",
    "IdentityReport",
    "LatticeFunction",
    "LatticeState",
    "Path1D",
    "PathPair",
    "Qubit4",
    "WalkOperators",
    "build_walk_operators",
    "coin_hadamard",
    "coin_identity",
    "coin_random",
    "distribution",
    "evolve",
    "function_registry",
    "init_state",
    "make_coin",
    "path_from_index",
    "path_pair",
    "step",
]
