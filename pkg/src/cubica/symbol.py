"""The cubic residue symbol (m/n)_3.

Two independent routes are kept side by side:

* :func:`symbol_definitional` computes ``m^((N(pi)-1)/3) mod pi`` for a prime pi
  and is the oracle.
* :func:`symbol` runs a Euclidean-style reduction using cubic reciprocity and
  the supplementary laws for the units and 1 - omega.

Vectorised helpers evaluate many symbols against one modulus (or one rational
numerator against many moduli); they go through residue tables built from the
definitional route and are cross-checked against :func:`symbol` in the tests.
Symbol values in arrays are encoded as int8 exponents of omega with ``-1``
standing for zero.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from functools import lru_cache
from typing import NamedTuple

import numpy as np
from sympy import factorint

from .eisenstein import (
    OMEGA,
    OMEGA2,
    ONE,
    EisensteinInt,
    factorize,
    omega_residue,
    primary_associate,
    split_ramified,
)
from .errors import BadModulus, NotPrime

ZERO_EXP = np.int8(-1)
_ROOTS = np.array([1.0, cmath.exp(2j * math.pi / 3), cmath.exp(4j * math.pi / 3)], dtype=complex)


@dataclass(frozen=True, slots=True)
class CubicValue:
    """Element of {0, 1, omega, omega^2}; ``k`` is the omega exponent, None for zero."""

    k: int | None

    def __post_init__(self):
        if self.k is not None and self.k not in (0, 1, 2):
            object.__setattr__(self, "k", self.k % 3)

    @classmethod
    def zero(cls) -> "CubicValue":
        return cls(None)

    @classmethod
    def omega_power(cls, k: int) -> "CubicValue":
        return cls(k % 3)

    @classmethod
    def from_exponent(cls, e: int) -> "CubicValue":
        return cls(None) if e < 0 else cls(int(e) % 3)

    @property
    def is_zero(self) -> bool:
        return self.k is None

    @property
    def exponent(self) -> int:
        return -1 if self.k is None else self.k

    def __mul__(self, other: "CubicValue") -> "CubicValue":
        if self.k is None or other.k is None:
            return CubicValue(None)
        return CubicValue((self.k + other.k) % 3)

    def __pow__(self, n: int) -> "CubicValue":
        if self.k is None:
            return CubicValue(None) if n > 0 else CubicValue(0)
        return CubicValue((self.k * n) % 3)

    def conjugate(self) -> "CubicValue":
        return self if self.k is None else CubicValue((-self.k) % 3)

    def __complex__(self) -> complex:
        return 0j if self.k is None else complex(_ROOTS[self.k])

    def as_eisenstein(self) -> EisensteinInt:
        if self.k is None:
            return EisensteinInt(0, 0)
        return (ONE, OMEGA, OMEGA2)[self.k]

    def __repr__(self) -> str:
        if self.k is None:
            return "Zero"
        return ("1", "w", "w^2")[self.k]


ZERO_VALUE = CubicValue(None)
ONE_VALUE = CubicValue(0)


def exponents_to_complex(e: np.ndarray) -> np.ndarray:
    out = np.zeros(e.shape, dtype=complex)
    nz = e >= 0
    out[nz] = _ROOTS[e[nz]]
    return out


def combine_exponents(e1: np.ndarray, e2: np.ndarray) -> np.ndarray:
    """Pointwise product of two symbol arrays in exponent encoding."""
    out = ((e1.astype(np.int16) + e2) % 3).astype(np.int8)
    out[(e1 < 0) | (e2 < 0)] = ZERO_EXP
    return out


def conj_exponents(e: np.ndarray) -> np.ndarray:
    out = ((-e.astype(np.int16)) % 3).astype(np.int8)
    out[e < 0] = ZERO_EXP
    return out


# ----------------------------------------------------------------------
# definitional route


def _reduce(z: EisensteinInt, pi: EisensteinInt) -> EisensteinInt:
    return z % pi


def _check_prime(pi: EisensteinInt) -> None:
    f = factorize(pi)
    if len(f.factors) != 1 or f.factors[0].exponent != 1:
        raise NotPrime(f"{pi} is not prime")
    if f.factors[0].ramified:
        raise NotPrime(f"{pi} is the ramified prime")


def symbol_definitional(m, pi, k: int = 1) -> CubicValue:
    """(m/pi^k)_3 from Euler's criterion ``m^((N(pi)-1)/3) mod pi``."""
    m, pi = EisensteinInt.coerce(m), EisensteinInt.coerce(pi)
    _check_prime(pi)
    if k < 1:
        raise ValueError("k must be positive")
    r = _reduce(m, pi)
    if r.is_zero():
        return ZERO_VALUE
    e = (pi.norm() - 1) // 3
    x, base = ONE, r
    while e:
        if e & 1:
            x = _reduce(x * base, pi)
        base = _reduce(base * base, pi)
        e >>= 1
    for j, u in enumerate((ONE, OMEGA, OMEGA2)):
        if pi.divides(x - u):
            return CubicValue(j) ** k
    raise AssertionError(f"{m}^((N-1)/3) mod {pi} is not a cube root of unity")


def symbol_by_factorization(m, n) -> CubicValue:
    """Product of definitional symbols over the prime factorisation of n."""
    m, n = EisensteinInt.coerce(m), EisensteinInt.coerce(n)
    out = ONE_VALUE
    for p, e, _ in factorize(n).factors:
        out = out * symbol_definitional(m, p, e)
    return out


# ----------------------------------------------------------------------
# reciprocity route


class Supplements(NamedTuple):
    s_omega: CubicValue
    s_one_minus_omega: CubicValue
    s_three: CubicValue


def _primary_cd(n: EisensteinInt) -> tuple[int, int]:
    if not n.is_primary():
        raise BadModulus(f"{n} is not congruent to 1 mod 3")
    return (n.a - 1) // 3, n.b // 3


def supplement_values(n) -> Supplements:
    """(omega/n)_3, ((1-omega)/n)_3 and (3/n)_3 for primary n = 1 + 3c + 3d*omega."""
    n = EisensteinInt.coerce(n)
    c, d = _primary_cd(n)
    return Supplements(
        CubicValue.omega_power(2 * c + 2 * d),
        CubicValue.omega_power(c),
        CubicValue.omega_power(d),
    )


def _unit_exponent(u: EisensteinInt) -> int:
    # u = +-omega^j; (-1/n)_3 = 1, so only j matters
    for j, w in enumerate((ONE, OMEGA, OMEGA2)):
        if u == w or u == -w:
            return j
    raise AssertionError(f"{u} is not a unit")


def symbol(m, n) -> CubicValue:
    """(m/n)_3 for primary n, any m, by reciprocity reduction."""
    m, n = EisensteinInt.coerce(m), EisensteinInt.coerce(n)
    if n.is_zero() or not n.is_primary():
        raise BadModulus(f"{n} is not congruent to 1 mod 3")
    acc = 0
    while True:
        if n == ONE:
            return CubicValue(acc)
        m = m % n
        if m.is_zero():
            return ZERO_VALUE
        c, d = _primary_cd(n)
        k, rest = split_ramified(m)
        p = primary_associate(rest)
        u = rest.exact_div(p)
        acc += k * c + _unit_exponent(u) * (2 * c + 2 * d)
        m, n = n, p


# ----------------------------------------------------------------------
# vectorised residue tables


def _powmod_array(x: np.ndarray, e: int, p: int) -> np.ndarray:
    x = x % p
    result = np.ones_like(x)
    while e:
        if e & 1:
            result = result * x % p
        x = x * x % p
        e >>= 1
    return result


def _powmod_fp_omega(u: np.ndarray, v: np.ndarray, e: int, p: int) -> tuple[np.ndarray, np.ndarray]:
    """Elementwise (u + v*omega)^e in Z[omega]/(p)."""
    u, v = u % p, v % p
    ru, rv = np.ones_like(u), np.zeros_like(v)

    def mul(a, b, c, d):
        bd = b * d % p
        return (a * c - bd) % p, (a * d + b * c - bd) % p

    while e:
        if e & 1:
            ru, rv = mul(ru, rv, u, v)
        u, v = mul(u, v, u, v)
        e >>= 1
    return ru, rv


@lru_cache(maxsize=4096)
def split_prime_table(pi: EisensteinInt) -> np.ndarray:
    """Exponent table of (x/pi)_3 for rational residues x = 0..p-1, N(pi) = p = 1 mod 3."""
    p = pi.norm()
    r = omega_residue(pi)
    vals = _powmod_array(np.arange(p, dtype=np.int64), (p - 1) // 3, p)
    table = np.full(p, ZERO_EXP, dtype=np.int8)
    table[vals == 1] = 0
    table[vals == r] = 1
    table[vals == r * r % p] = 2
    table[0] = ZERO_EXP
    table.setflags(write=False)
    return table


def _prime_symbol_exponents(ma: np.ndarray, mb: np.ndarray, pi: EisensteinInt) -> np.ndarray:
    """Exponents of (m/pi)_3 for arrays of m, pi prime coprime to 3."""
    p = pi.norm()
    q = math.isqrt(p)
    if not (q * q == p and q % 3 == 2):
        if p % 3 != 1:
            raise NotPrime(f"{pi} is not a prime coprime to 3")
        r = omega_residue(pi)
        x = (ma % p + (mb % p) * r) % p
        return split_prime_table(pi)[x]
    ru, rv = _powmod_fp_omega(ma.astype(np.int64), mb.astype(np.int64), (p - 1) // 3, q)
    out = np.full(ma.shape, ZERO_EXP, dtype=np.int8)
    out[(ru == 1) & (rv == 0)] = 0
    out[(ru == 0) & (rv == 1)] = 1
    out[(ru == q - 1) & (rv == q - 1)] = 2
    return out


@lru_cache(maxsize=65536)
def _factor_primary(n: EisensteinInt) -> tuple[tuple[EisensteinInt, int], ...]:
    return tuple((p, e) for p, e, _ in factorize(n).factors)


def symbol_exponents(ma, mb, n) -> np.ndarray:
    """Exponents of (m/n)_3 for a fixed primary n and arrays of m = ma + mb*omega."""
    n = EisensteinInt.coerce(n)
    if not n.is_primary():
        raise BadModulus(f"{n} is not congruent to 1 mod 3")
    ma = np.asarray(ma, dtype=np.int64)
    mb = np.asarray(mb, dtype=np.int64) if mb is not None else np.zeros_like(ma)
    out = np.zeros(ma.shape, dtype=np.int8)
    for pi, e in _factor_primary(n):
        ex = _prime_symbol_exponents(ma, mb, pi)
        if e % 3 != 1:
            ex = np.where(ex < 0, ex, (ex.astype(np.int16) * e % 3).astype(np.int8))
        out = combine_exponents(out, ex)
    return out


def rational_symbol_exponents(m: int, na, nb) -> np.ndarray:
    """Exponents of (m/n)_3 for a fixed rational m and arrays of primary n.

    Uses (-1/n) = 1, (3/n) = omega^d for n = 1 + 3c + 3d*omega, and
    (p/n) = (n/p*) with p* = +-p primary for every other prime p.
    """
    na = np.asarray(na, dtype=np.int64)
    nb = np.asarray(nb, dtype=np.int64)
    if m == 0:
        out = np.full(na.shape, ZERO_EXP, dtype=np.int8)
        out[(na == 1) & (nb == 0)] = 0
        return out
    out = np.zeros(na.shape, dtype=np.int8)
    for p, e in factorint(abs(m)).items():
        if p == 3:
            ex = ((nb // 3) % 3 * e % 3).astype(np.int8)
        else:
            pstar = p if p % 3 == 1 else -p
            ex = symbol_exponents(na, nb, EisensteinInt(pstar, 0))
            if e % 3 != 1:
                ex = np.where(ex < 0, ex, (ex.astype(np.int16) * e % 3).astype(np.int8))
        out = combine_exponents(out, ex)
    return out
