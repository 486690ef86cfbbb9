"""Primitive cubic Dirichlet characters of conductor coprime to 3.

Every such character is m -> (m/n)_3 for a primary, squarefree n with no
rational prime divisor; the conductor is N(n).  Characters are stored by
generator only and always evaluated through :mod:`cubica.symbol`.
"""

from __future__ import annotations

import csv
import itertools
from dataclasses import dataclass
from pathlib import Path

import numpy as np
from sympy import factorint

from .eisenstein import (
    EisensteinInt,
    enumerate_primary_arrays,
    primary_associate,
    split_prime,
)
from .symbol import CubicValue, exponents_to_complex, symbol, symbol_exponents


@dataclass(frozen=True, slots=True)
class CubicCharacter:
    generator: EisensteinInt
    conductor: int

    @classmethod
    def from_generator(cls, n) -> "CubicCharacter":
        n = EisensteinInt.coerce(n)
        return cls(n, n.norm())

    def __call__(self, m: int) -> CubicValue:
        return evaluate(self, m)

    def conjugate(self) -> "CubicCharacter":
        return CubicCharacter(primary_associate(self.generator.conjugate()), self.conductor)

    def exponents(self, m) -> np.ndarray:
        """Values at the integers ``m`` in omega-exponent encoding (-1 for zero)."""
        m = np.asarray(m, dtype=np.int64)
        return symbol_exponents(m, np.zeros_like(m), self.generator)

    def values(self, m) -> np.ndarray:
        """Complex values at the integers ``m``."""
        return exponents_to_complex(self.exponents(m))

    def sort_key(self) -> tuple[int, int, int]:
        return (self.conductor, self.generator.a, self.generator.b)

    def __repr__(self) -> str:
        return f"chi[{self.generator}]"


def evaluate(chi: CubicCharacter, m: int) -> CubicValue:
    return symbol(EisensteinInt(int(m), 0), chi.generator)


def characters_for_conductor(q: int) -> list[CubicCharacter]:
    if q <= 1:
        return []
    f = factorint(q)
    if any(e > 1 or p % 3 != 1 for p, e in f.items()):
        return []
    choices = [split_prime(p) for p in sorted(f)]
    out = []
    for combo in itertools.product(*choices):
        n = EisensteinInt(1, 0)
        for pi in combo:
            n = n * pi
        out.append(CubicCharacter(n, q))
    out.sort(key=CubicCharacter.sort_key)
    return out


def enumerate_cubic_characters(Q: int, *, lower: int = 0) -> list[CubicCharacter]:
    """All primitive cubic characters with lower < conductor <= Q, sorted by
    (conductor, generator)."""
    if Q < 1:
        raise ValueError("Q must be >= 1")
    a, b, nrm = enumerate_primary_arrays(
        Q, squarefree=True, no_rational_prime_divisor=True, lower=max(lower, 1)
    )
    return [CubicCharacter(EisensteinInt(int(x), int(y)), int(q)) for x, y, q in zip(a, b, nrm)]


def write_character_csv(chars, path) -> None:
    path = Path(path)
    with path.open("w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["conductor", "gen_a", "gen_b"])
        for chi in chars:
            w.writerow([chi.conductor, chi.generator.a, chi.generator.b])


def read_character_csv(path) -> list[CubicCharacter]:
    with Path(path).open(encoding="utf-8") as fh:
        rows = list(csv.DictReader(fh))
    return [
        CubicCharacter(EisensteinInt(int(r["gen_a"]), int(r["gen_b"])), int(r["conductor"]))
        for r in rows
    ]
