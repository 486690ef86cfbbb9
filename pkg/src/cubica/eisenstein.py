"""Exact arithmetic in the Eisenstein integers Z[omega], omega = exp(2 pi i / 3).

Elements are stored as coordinate pairs ``(a, b)`` meaning ``a + b*omega``.
Nothing is normalised implicitly; primary forms are produced only by
:func:`primary_associate` and the functions that document doing so.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, NamedTuple

import numpy as np
from sympy import factorint

from .errors import BothZero, RamifiedInput, ZeroInput

SQRT3 = math.sqrt(3.0)
OMEGA_COMPLEX = complex(-0.5, SQRT3 / 2)


@dataclass(frozen=True, slots=True)
class EisensteinInt:
    a: int
    b: int

    @classmethod
    def coerce(cls, x) -> "EisensteinInt":
        if isinstance(x, EisensteinInt):
            return x
        if isinstance(x, (int, np.integer)):
            return cls(int(x), 0)
        if isinstance(x, tuple) and len(x) == 2:
            return cls(int(x[0]), int(x[1]))
        raise TypeError(f"cannot interpret {x!r} as an Eisenstein integer")

    # ring operations -------------------------------------------------
    def __add__(self, other):
        o = _maybe(other)
        if o is None:
            return NotImplemented
        return EisensteinInt(self.a + o.a, self.b + o.b)

    __radd__ = __add__

    def __sub__(self, other):
        o = _maybe(other)
        if o is None:
            return NotImplemented
        return EisensteinInt(self.a - o.a, self.b - o.b)

    def __rsub__(self, other):
        o = _maybe(other)
        if o is None:
            return NotImplemented
        return o - self

    def __neg__(self):
        return EisensteinInt(-self.a, -self.b)

    def __mul__(self, other):
        o = _maybe(other)
        if o is None:
            return NotImplemented
        a, b, c, d = self.a, self.b, o.a, o.b
        return EisensteinInt(a * c - b * d, a * d + b * c - b * d)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative exponent")
        result = ONE
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __divmod__(self, other):
        o = _maybe(other)
        if o is None:
            return NotImplemented
        if o.is_zero():
            raise ZeroDivisionError("division by zero in Z[omega]")
        num = self * o.conjugate()
        n = o.norm()
        q = EisensteinInt(_round_div(num.a, n), _round_div(num.b, n))
        return q, self - q * o

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def exact_div(self, other) -> "EisensteinInt":
        """Divide, raising ``ValueError`` if the division is not exact."""
        o = EisensteinInt.coerce(other)
        num = self * o.conjugate()
        n = o.norm()
        if num.a % n or num.b % n:
            raise ValueError(f"{o} does not divide {self}")
        return EisensteinInt(num.a // n, num.b // n)

    def divides(self, other) -> bool:
        o = EisensteinInt.coerce(other)
        if self.is_zero():
            return o.is_zero()
        num = o * self.conjugate()
        n = self.norm()
        return num.a % n == 0 and num.b % n == 0

    # invariants -------------------------------------------------------
    def norm(self) -> int:
        return self.a * self.a - self.a * self.b + self.b * self.b

    def conjugate(self) -> "EisensteinInt":
        return EisensteinInt(self.a - self.b, -self.b)

    def is_zero(self) -> bool:
        return self.a == 0 and self.b == 0

    def is_unit(self) -> bool:
        return self.norm() == 1

    def is_primary(self) -> bool:
        return self.a % 3 == 1 and self.b % 3 == 0

    def __complex__(self) -> complex:
        return complex(self.a - 0.5 * self.b, SQRT3 / 2 * self.b)

    def __repr__(self) -> str:
        return f"E({self.a}, {self.b})"

    def __str__(self) -> str:
        if self.b == 0:
            return str(self.a)
        if self.a == 0:
            return f"{self.b}w"
        sign = "+" if self.b > 0 else "-"
        return f"{self.a}{sign}{abs(self.b)}w"

    def sort_key(self) -> tuple[int, int, int]:
        return (self.norm(), self.a, self.b)


def _maybe(x):
    if isinstance(x, EisensteinInt):
        return x
    if isinstance(x, (int, np.integer)):
        return EisensteinInt(int(x), 0)
    return None


def _round_div(num: int, den: int) -> int:
    # nearest integer, ties toward +inf; den > 0
    return (2 * num + den) // (2 * den)


ZERO = EisensteinInt(0, 0)
ONE = EisensteinInt(1, 0)
OMEGA = EisensteinInt(0, 1)
OMEGA2 = EisensteinInt(-1, -1)
ONE_MINUS_OMEGA = EisensteinInt(1, -1)
SQRT_MINUS3 = EisensteinInt(1, 2)  # (1 + 2w)^2 = -3
UNITS = (ONE, OMEGA, OMEGA2, -ONE, -OMEGA, -OMEGA2)


def norm_of(z) -> int:
    return EisensteinInt.coerce(z).norm()


def associates(z) -> list[EisensteinInt]:
    z = EisensteinInt.coerce(z)
    return [u * z for u in UNITS]


def primary_associate(z) -> EisensteinInt:
    """Return the unique associate of ``z`` congruent to 1 mod 3."""
    z = EisensteinInt.coerce(z)
    if z.is_zero():
        raise ZeroInput("zero has no primary associate")
    if (z.a + z.b) % 3 == 0:
        raise RamifiedInput(f"{z} is divisible by 1 - omega")
    for u in UNITS:
        w = u * z
        if w.is_primary():
            return w
    raise AssertionError("unreachable: every unit class contains a primary element")


def canonical_associate(z) -> EisensteinInt:
    """Primary associate when coprime to 3, otherwise the associate with a > 0
    and then minimal b."""
    z = EisensteinInt.coerce(z)
    if z.is_zero():
        return z
    if (z.a + z.b) % 3 != 0:
        return primary_associate(z)
    cands = [w for w in associates(z) if w.a > 0]
    return min(cands, key=lambda w: (w.b, w.a))


def gcd(x, y) -> EisensteinInt:
    x, y = EisensteinInt.coerce(x), EisensteinInt.coerce(y)
    if x.is_zero() and y.is_zero():
        raise BothZero("gcd(0, 0) is undefined")
    while not y.is_zero():
        x, y = y, x % y
    return canonical_associate(x)


def divisible_by_one_minus_omega(z: EisensteinInt) -> bool:
    return (z.a + z.b) % 3 == 0


def split_ramified(z: EisensteinInt) -> tuple[int, EisensteinInt]:
    """Write ``z = (1 - omega)^k * z'`` with z' coprime to 3; returns (k, z')."""
    if z.is_zero():
        raise ZeroInput("zero")
    k = 0
    while divisible_by_one_minus_omega(z):
        z = z.exact_div(ONE_MINUS_OMEGA)
        k += 1
    return k, z


# ----------------------------------------------------------------------
# factorisation


class PrimePower(NamedTuple):
    prime: EisensteinInt
    exponent: int
    ramified: bool = False


@dataclass(frozen=True)
class Factorization:
    unit: EisensteinInt
    factors: tuple[PrimePower, ...]

    def expand(self) -> EisensteinInt:
        out = self.unit
        for p, e, _ in self.factors:
            out = out * p**e
        return out

    @property
    def ramified_exponent(self) -> int:
        return sum(e for _, e, r in self.factors if r)

    def primes(self) -> list[EisensteinInt]:
        return [p for p, _, _ in self.factors]


@lru_cache(maxsize=None)
def cube_root_of_unity_mod(p: int) -> int:
    """Nontrivial cube root of unity mod a prime p = 1 (mod 3), found from the
    smallest g >= 2 that is not a cube."""
    if p % 3 != 1:
        raise ValueError(f"{p} is not 1 mod 3")
    e = (p - 1) // 3
    g = 2
    while True:
        r = pow(g, e, p)
        if r != 1:
            return r
        g += 1


@lru_cache(maxsize=None)
def split_prime(p: int) -> tuple[EisensteinInt, EisensteinInt]:
    """The two primary primes above a rational prime p = 1 (mod 3), sorted."""
    r = cube_root_of_unity_mod(p)
    pi = gcd(EisensteinInt(p, 0), EisensteinInt(-r, 1))
    assert pi.norm() == p, (p, pi)
    pair = sorted([pi, primary_associate(pi.conjugate())], key=EisensteinInt.sort_key)
    return pair[0], pair[1]


@lru_cache(maxsize=None)
def omega_residue(pi: EisensteinInt) -> int:
    """The rational r with omega = r (mod pi), for a prime pi of prime norm p = 1 mod 3."""
    p = pi.norm()
    r = cube_root_of_unity_mod(p)
    for cand in (r, r * r % p):
        if pi.divides(EisensteinInt(-cand, 1)):
            return cand
    raise AssertionError(f"no omega residue for {pi}")


def primes_above(p: int) -> list[EisensteinInt]:
    """Primary primes (or 1 - omega) lying above the rational prime p."""
    if p == 3:
        return [ONE_MINUS_OMEGA]
    if p % 3 == 2:
        return [EisensteinInt(-p, 0)]
    return list(split_prime(p))


def factorize(z) -> Factorization:
    z = EisensteinInt.coerce(z)
    if z.is_zero():
        raise ZeroInput("cannot factor zero")
    rest = z
    out: list[PrimePower] = []
    for p in sorted(factorint(z.norm())):
        for pi in primes_above(p):
            e = 0
            while pi.divides(rest):
                rest = rest.exact_div(pi)
                e += 1
            if e:
                out.append(PrimePower(pi, e, p == 3))
    assert rest.is_unit(), (z, rest)
    out.sort(key=lambda f: f.prime.sort_key())
    return Factorization(rest, tuple(out))


def is_squarefree(z) -> bool:
    return all(e == 1 for _, e, _ in factorize(z).factors)


def has_rational_prime_divisor(z) -> bool:
    z = EisensteinInt.coerce(z)
    return math.gcd(z.a, z.b) > 1


def moebius(z) -> int:
    f = factorize(z)
    if any(e > 1 for _, e, _ in f.factors):
        return 0
    return -1 if len(f.factors) % 2 else 1


def moebius_int(n: int) -> int:
    n = abs(n)
    if n == 0:
        raise ZeroInput("mu(0)")
    f = factorint(n)
    if any(e > 1 for e in f.values()):
        return 0
    return -1 if len(f) % 2 else 1


# ----------------------------------------------------------------------
# enumeration


def squarefree_sieve(limit: int) -> np.ndarray:
    """Boolean array s with s[k] True iff k is squarefree (s[0] False)."""
    s = np.ones(limit + 1, dtype=bool)
    s[0] = False
    d = 2
    while d * d <= limit:
        s[d * d :: d * d] = False
        d += 1
    return s


def primes_up_to(limit: int) -> np.ndarray:
    """Rational primes <= limit (sieve of Eratosthenes)."""
    if limit < 2:
        return np.zeros(0, dtype=np.int64)
    s = np.ones(limit + 1, dtype=bool)
    s[:2] = False
    for d in range(2, math.isqrt(limit) + 1):
        if s[d]:
            s[d * d :: d] = False
    return np.flatnonzero(s).astype(np.int64)


def _primary_lattice(X: int) -> tuple[np.ndarray, np.ndarray]:
    # b = 3j, a = 1 + 3i with a^2 - ab + b^2 <= X
    bmax = math.ceil(2 * math.sqrt(X / 3)) + 1
    a_list, b_list = [], []
    for b in range(-(bmax // 3) * 3, bmax + 1, 3):
        disc = X - 0.75 * b * b
        if disc < 0:
            continue
        r = math.sqrt(disc)
        lo = math.floor(b / 2 - r) - 1
        hi = math.ceil(b / 2 + r) + 1
        lo += (1 - lo) % 3
        a = np.arange(lo, hi + 1, 3, dtype=np.int64)
        a_list.append(a)
        b_list.append(np.full(a.shape, b, dtype=np.int64))
    if not a_list:
        return np.zeros(0, np.int64), np.zeros(0, np.int64)
    a = np.concatenate(a_list)
    b = np.concatenate(b_list)
    nrm = a * a - a * b + b * b
    keep = nrm <= X
    return a[keep], b[keep]


def enumerate_primary_arrays(
    X: int,
    *,
    squarefree: bool = False,
    no_rational_prime_divisor: bool = False,
    lower: int = 0,
) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Vectorised enumeration of primary n with lower < N(n) <= X.

    Returns coordinate arrays ``(a, b, norm)`` sorted by (norm, a, b).
    """
    if X < 1:
        raise ValueError("X must be >= 1")
    a, b = _primary_lattice(X)
    nrm = a * a - a * b + b * b
    keep = nrm > lower
    a, b, nrm = a[keep], b[keep], nrm[keep]
    if squarefree or no_rational_prime_divisor:
        g = np.gcd(a, b)
        mask = np.ones(a.shape, dtype=bool)
        if no_rational_prime_divisor:
            mask &= g == 1
        if squarefree:
            sf = squarefree_sieve(int(X))
            prim_norm = nrm // (g * g)
            mask &= sf[g] & sf[prim_norm] & (np.gcd(g, prim_norm) == 1)
        a, b, nrm = a[mask], b[mask], nrm[mask]
    order = np.lexsort((b, a, nrm))
    return a[order], b[order], nrm[order]


def enumerate_primary(
    X: int, *, squarefree: bool = False, no_rational_prime_divisor: bool = False
) -> list[EisensteinInt]:
    """All primary n with N(n) <= X, optionally filtered, sorted by (norm, a, b)."""
    a, b, _ = enumerate_primary_arrays(
        X, squarefree=squarefree, no_rational_prime_divisor=no_rational_prime_divisor
    )
    return [EisensteinInt(int(x), int(y)) for x, y in zip(a, b)]


def elements_of_norm_at_most(X: int) -> tuple[np.ndarray, np.ndarray]:
    """All (a, b) with 0 < a^2 - ab + b^2 <= X (every element, not just primary)."""
    bmax = math.ceil(2 * math.sqrt(X / 3)) + 1
    bs = np.arange(-bmax, bmax + 1, dtype=np.int64)
    amax = bmax + 1
    aa, bb = np.meshgrid(np.arange(-amax, amax + 1, dtype=np.int64), bs, indexing="ij")
    aa, bb = aa.ravel(), bb.ravel()
    nrm = aa * aa - aa * bb + bb * bb
    keep = (nrm > 0) & (nrm <= X)
    return aa[keep], bb[keep]


def residues_mod(n: EisensteinInt) -> tuple[np.ndarray, np.ndarray]:
    """A complete residue system mod n as coordinate arrays (u, v).

    Uses the Hermite normal form of the ideal lattice: with g = gcd(a, b),
    the points u + v*omega with 0 <= u < N/g and 0 <= v < g are distinct mod n.
    """
    if n.is_zero():
        raise ZeroInput("residues mod 0")
    g = math.gcd(n.a, n.b)
    N = n.norm()
    u, v = np.meshgrid(np.arange(N // g, dtype=np.int64), np.arange(g, dtype=np.int64), indexing="ij")
    return u.ravel(), v.ravel()


def iter_divisors_primary(n: EisensteinInt) -> Iterable[EisensteinInt]:
    """Primary divisors of a primary n."""
    f = factorize(n)
    divs = [ONE]
    for p, e, ram in f.factors:
        if ram:
            continue
        divs = [d * p**k for d in divs for k in range(e + 1)]
    return divs
