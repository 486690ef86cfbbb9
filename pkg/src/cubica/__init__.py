"""Cubic Dirichlet characters over the Eisenstein integers: exact arithmetic,
cubic residue symbols, Gauss sums, central L-values, moments and large sieve
experiments."""

__version__ = "0.1.0"

from .characters import CubicCharacter, characters_for_conductor, enumerate_cubic_characters, evaluate
from .eisenstein import (
    EisensteinInt,
    Factorization,
    enumerate_primary,
    factorize,
    gcd,
    moebius,
    norm_of,
    primary_associate,
)
from .symbol import CubicValue, supplement_values, symbol, symbol_definitional

__all__ = [
    "CubicCharacter",
    "CubicValue",
    "EisensteinInt",
    "Factorization",
    "characters_for_conductor",
    "enumerate_cubic_characters",
    "enumerate_primary",
    "evaluate",
    "factorize",
    "gcd",
    "moebius",
    "norm_of",
    "primary_associate",
    "supplement_values",
    "symbol",
    "symbol_definitional",
]
