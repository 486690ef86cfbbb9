"""Cubic Gauss sums over Z[omega] and Z, the identities they satisfy, averages
of Gauss sums over the family, and numerical checks of Poisson summation.

The additive character is e(Tr(z)) with Tr(x + y*omega) = 2x - y.  Phases are
reduced exactly as rationals mod 1 before a single complex exponential.
"""

from __future__ import annotations

import cmath
import csv
import math
from dataclasses import dataclass, field
from functools import lru_cache
from pathlib import Path

import numpy as np

from .characters import CubicCharacter, enumerate_cubic_characters
from .eisenstein import (
    ONE,
    SQRT_MINUS3,
    EisensteinInt,
    elements_of_norm_at_most,
    enumerate_primary,
    enumerate_primary_arrays,
    factorize,
    gcd,
    moebius,
    primary_associate,
    residues_mod,
    split_ramified,
)
from .errors import BadModulus
from .symbol import (
    CubicValue,
    combine_exponents,
    conj_exponents,
    exponents_to_complex,
    rational_symbol_exponents,
    symbol,
    symbol_exponents,
)
from .weights import DEFAULT_WEIGHT


@dataclass(frozen=True)
class GaussSumValue:
    value: complex
    modulus_norm: int

    def __complex__(self) -> complex:
        return self.value

    def __abs__(self) -> float:
        return abs(self.value)


def _phases(T: np.ndarray, N: int) -> np.ndarray:
    return np.exp(2j * np.pi * ((T % N) / N))


def g_twisted(r, n) -> GaussSumValue:
    """g(r, n) = sum over x mod n of (x/n)_3 * e(Tr(r x / n))."""
    r, n = EisensteinInt.coerce(r), EisensteinInt.coerce(n)
    if n.is_zero() or not n.is_primary():
        raise BadModulus(f"{n} is not congruent to 1 mod 3")
    N = n.norm()
    if N == 1:
        return GaussSumValue(1.0 + 0j, 1)
    u, v = residues_mod(n)
    ex = symbol_exponents(u, v, n)
    keep = ex >= 0
    u, v, ex = u[keep], v[keep], ex[keep]
    # r*x, then times conj(n): X + Y*omega, trace numerator 2X - Y over N
    ra, rb = r.a, r.b
    xa = ra * u - rb * v
    xb = ra * v + rb * u - rb * v
    ca, cb = n.a - n.b, -n.b
    X = xa * ca - xb * cb
    Y = xa * cb + xb * ca - xb * cb
    vals = exponents_to_complex(ex) * _phases(2 * X - Y, N)
    return GaussSumValue(complex(vals.sum()), N)


def g_of(n) -> GaussSumValue:
    return g_twisted(ONE, n)


@lru_cache(maxsize=None)
def _prime_gauss_sum(pi: EisensteinInt) -> complex:
    return g_of(pi).value


def g_multiplicative(n) -> GaussSumValue:
    """g(n) assembled from prime Gauss sums via g(n1 n2) = conj((n1/n2)_3) g(n1) g(n2)."""
    n = EisensteinInt.coerce(n)
    if not n.is_primary():
        raise BadModulus(f"{n} is not congruent to 1 mod 3")
    N = n.norm()
    f = factorize(n)
    if any(e > 1 for _, e, _ in f.factors):
        return GaussSumValue(0j, N)
    acc_n, acc_g = ONE, 1.0 + 0j
    for pi, _, _ in f.factors:
        twist = complex(symbol(acc_n, pi).conjugate())
        acc_g = twist * acc_g * _prime_gauss_sum(pi)
        acc_n = acc_n * pi
    return GaussSumValue(acc_g, N)


def tau_of_values(values: np.ndarray, q: int) -> complex:
    """Gauss sum of a Dirichlet character given by its values at 1..q."""
    x = np.arange(1, q + 1, dtype=np.int64)
    return complex((values * _phases(x, q)).sum())


def tau(chi: CubicCharacter) -> GaussSumValue:
    """tau(chi) = sum_{x=1}^{q} chi(x) e(x/q), computed directly."""
    q = chi.conductor
    x = np.arange(1, q + 1, dtype=np.int64)
    return GaussSumValue(tau_of_values(chi.values(x), q), q)


# ----------------------------------------------------------------------
# identity suite


@dataclass
class IdentityResult:
    name: str
    instances: int = 0
    max_abs_deviation: float = 0.0
    max_rel_deviation: float = 0.0
    failures: list = field(default_factory=list)

    def record(self, lhs: complex, rhs: complex, scale: float, tol: float, info=None) -> None:
        dev = abs(lhs - rhs)
        rel = dev / max(scale, 1.0)
        self.instances += 1
        self.max_abs_deviation = max(self.max_abs_deviation, dev)
        self.max_rel_deviation = max(self.max_rel_deviation, rel)
        if rel > tol and len(self.failures) < 20:
            self.failures.append((info, lhs, rhs))

    @property
    def passed(self) -> bool:
        return not self.failures


@dataclass
class IdentityReport:
    X: int
    tol: float
    results: dict[str, IdentityResult]

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.results.values())

    @property
    def max_rel_deviation(self) -> float:
        return max(r.max_rel_deviation for r in self.results.values())

    def write_csv(self, path) -> None:
        with Path(path).open("w", newline="", encoding="utf-8") as fh:
            w = csv.writer(fh, lineterminator="\n")
            w.writerow(["identity_name", "instances_checked", "max_abs_deviation"])
            for r in self.results.values():
                w.writerow([r.name, r.instances, repr(float(r.max_abs_deviation))])


_TWIST_RS = (EisensteinInt(1, 0), EisensteinInt(2, 0), EisensteinInt(1, -1), EisensteinInt(2, 1))


def _cplx(z: EisensteinInt) -> complex:
    return complex(z)


def identity_suite(X: int, tol: float = 1e-9) -> IdentityReport:
    """Exhaustively check the Gauss sum identities over moduli of norm <= X.

    Deviations are measured relative to the natural size of each side (for
    example N(n)^(3/2) for g(n)^3).
    """
    names = [
        "g_cubed",
        "tau_equals_g",
        "twist_rs",
        "twisted_multiplicativity",
        "twisted_multiplicativity_alt",
        "prime_power_square",
        "squarefree_vanishing",
        "lemma_product_formula",
    ]
    res = {k: IdentityResult(k) for k in names}
    prim = enumerate_primary(X)
    g_cache: dict[tuple, complex] = {}

    def G(r: EisensteinInt, n: EisensteinInt) -> complex:
        key = (r.a, r.b, n.a, n.b)
        if key not in g_cache:
            g_cache[key] = g_twisted(r, n).value
        return g_cache[key]

    for n in prim:
        N = n.norm()
        g = G(ONE, n)
        mu = moebius(n)
        res["g_cubed"].record(g**3, mu * N * _cplx(n), N**1.5, tol, n)
        if mu == 0:
            res["squarefree_vanishing"].record(g, 0j, math.sqrt(N), tol, n)
            # g(r, n) = 0 if pi^2 | n and pi does not divide r
            for pi, e, _ in factorize(n).factors:
                if e >= 2:
                    for r in _TWIST_RS[1:]:
                        if not pi.divides(r):
                            res["squarefree_vanishing"].record(G(r, n), 0j, math.sqrt(N), tol, (r, n))
        for r in _TWIST_RS[:2]:
            for s in _TWIST_RS[1:]:
                if not gcd(s, n).is_unit():
                    continue
                lhs = G(r * s, n)
                rhs = complex(symbol(s, n).conjugate()) * G(r, n)
                res["twist_rs"].record(lhs, rhs, math.sqrt(N) * 2, tol, (r, s, n))

    for chi in enumerate_cubic_characters(X):
        res["tau_equals_g"].record(
            tau(chi).value, G(ONE, chi.generator), math.sqrt(chi.conductor), tol, chi
        )

    for i, n1 in enumerate(prim):
        if n1 == ONE:
            continue
        for n2 in prim:
            if n2 == ONE:
                continue
            if n1.norm() * n2.norm() > X:
                break
            if not gcd(n1, n2).is_unit():
                continue
            n12 = n1 * n2
            for r in _TWIST_RS[:3]:
                lhs = G(r, n12)
                rhs1 = complex(symbol(n1, n2).conjugate()) * G(r, n1) * G(r, n2)
                rhs2 = G(n2 * r, n1) * G(r, n2)
                scale = math.sqrt(n12.norm()) * 2
                res["twisted_multiplicativity"].record(lhs, rhs1, scale, tol, (r, n1, n2))
                res["twisted_multiplicativity_alt"].record(lhs, rhs2, scale, tol, (r, n1, n2))

    # g(pi^2, pi^k) = -N(pi)^2 if k = 3 else 0
    for pi in prim:
        f = factorize(pi)
        if len(f.factors) != 1 or f.factors[0].exponent != 1:
            continue
        k = 1
        while pi.norm() ** k <= X:
            lhs = G(pi * pi, pi**k)
            rhs = -(pi.norm() ** 2) if k == 3 else 0
            res["prime_power_square"].record(lhs, rhs, pi.norm() ** 2, tol, (pi, k))
            k += 1

    _lemma_product_checks(X, res["lemma_product_formula"], tol)
    return IdentityReport(X, tol, res)


def tau_product_character(n1: EisensteinInt, n2d: EisensteinInt) -> complex:
    """tau of the Dirichlet character m -> chi_{n1}(m) * conj(chi_{n2d}(m))."""
    q = n1.norm() * n2d.norm()
    x = np.arange(1, q + 1, dtype=np.int64)
    z = np.zeros_like(x)
    e = combine_exponents(symbol_exponents(x, z, n1), conj_exponents(symbol_exponents(x, z, n2d)))
    return tau_of_values(exponents_to_complex(e), q)


def lemma_product_sides(n1, n2, delta) -> tuple[complex, complex]:
    """Both sides of the product formula for tau(chi_{n1} * conj(chi_{n2 delta}))."""
    n1, n2, delta = (EisensteinInt.coerce(z) for z in (n1, n2, delta))
    lhs = tau_product_character(n1, n2 * delta)
    n1bar = primary_associate(n1.conjugate()) if n1 != ONE else ONE
    c1 = complex(symbol(n2 * delta, n1bar))
    c2 = complex(symbol(delta, n2))
    t1 = tau(CubicCharacter.from_generator(n1)).value
    t2 = tau(CubicCharacter.from_generator(n2).conjugate()).value
    t3 = tau(CubicCharacter.from_generator(delta).conjugate()).value
    return lhs, c1 * c2 * t1 * t2 * t3


def _lemma_product_checks(X: int, out: IdentityResult, tol: float) -> None:
    gens = [chi.generator for chi in enumerate_cubic_characters(X)]
    gens = [ONE] + gens
    for n1 in gens:
        for n2 in gens:
            if n1.norm() * n2.norm() > X:
                continue
            if math.gcd(n1.norm(), n2.norm()) != 1:
                continue
            for d in gens:
                q = n1.norm() * n2.norm() * d.norm()
                if q > X or q == 1:
                    continue
                if math.gcd(d.norm(), n1.norm() * n2.norm()) != 1:
                    continue
                lhs, rhs = lemma_product_sides(n1, n2, d)
                out.record(lhs, rhs, math.sqrt(q), tol, (n1, n2, d))


# ----------------------------------------------------------------------
# Gauss sum averages


def gauss_average(m, Q: float, w=DEFAULT_WEIGHT, *, rational_filter: bool = True) -> complex:
    """Sum over squarefree primary n (with no rational prime divisor when
    ``rational_filter``) of conj((m/n)_3) g(n) N(n)^(-1/2) w(N(n)/Q)."""
    m = EisensteinInt.coerce(m)
    lo, hi = w.support
    X = int(math.floor(hi * Q))
    if X < 1:
        return 0j
    a, b, nrm = enumerate_primary_arrays(
        X, squarefree=True, no_rational_prime_divisor=rational_filter, lower=int(lo * Q)
    )
    wt = w(nrm / Q)
    keep = wt != 0
    a, b, nrm, wt = a[keep], b[keep], nrm[keep], wt[keep]
    total = 0j
    for x, y, q, ww in zip(a, b, nrm, wt):
        n = EisensteinInt(int(x), int(y))
        chi_m = complex(symbol(m, n).conjugate())
        if chi_m == 0:
            continue
        total += chi_m * g_multiplicative(n).value / math.sqrt(q) * ww
    return total


def gauss_average_bruteforce(m, Q: float, w=DEFAULT_WEIGHT, *, rational_filter: bool = True) -> complex:
    """Independent double loop: scan the lattice, test filters by factorisation,
    evaluate g(n) from its definition."""
    m = EisensteinInt.coerce(m)
    lo, hi = w.support
    X = int(math.floor(hi * Q))
    total = 0j
    bmax = int(2 * math.sqrt(X / 3)) + 2
    for bb in range(-bmax, bmax + 1):
        for aa in range(-bmax - 1, bmax + 2):
            n = EisensteinInt(aa, bb)
            q = n.norm()
            if q == 0 or q > X or not n.is_primary():
                continue
            wt = float(w(q / Q))
            if wt == 0:
                continue
            if moebius(n) == 0:
                continue
            if rational_filter and math.gcd(aa, bb) > 1:
                continue
            total += complex(symbol(m, n).conjugate()) * g_of(n).value / math.sqrt(q) * wt
    return total


def split_m(m) -> tuple[EisensteinInt, EisensteinInt]:
    """m = m0 * m1 with m0 a unit times a power of 1 - omega and m1 primary."""
    m = EisensteinInt.coerce(m)
    k, rest = split_ramified(m)
    m1 = primary_associate(rest)
    return m.exact_div(m1), m1


# ----------------------------------------------------------------------
# Poisson summation checks


def poisson_1d_sides(chi: CubicCharacter, w, M: float, *, tail: float = 1e-17) -> tuple[complex, complex]:
    """Both sides of sum_m w(m/M) chi(m) = (M/q) tau(chi) sum_h conj(chi(h)) w^(hM/q)."""
    q = chi.conductor
    # left side: scan m until the weight is negligible on both sides
    lo, hi = _effective_support(w, M)
    m = np.arange(math.floor(lo), math.ceil(hi) + 1, dtype=np.int64)
    lhs = complex((np.asarray(w(m / M)) * chi.values(m)).sum())
    t = tau(chi).value
    rhs = 0j
    h = 1
    quiet = 0
    while quiet < 5:
        hs = np.array([h, -h], dtype=np.int64)
        vals = np.array([complex(w.fourier(float(x) * M / q)) for x in hs])
        contrib = complex((np.conj(chi.values(hs)) * vals).sum())
        rhs += contrib
        quiet = quiet + 1 if np.abs(vals).max() < tail else 0
        h += 1
        if h > 100000:
            break
    return lhs, M / q * t * rhs


def _effective_support(w, M: float) -> tuple[float, float]:
    if hasattr(w, "support"):
        lo, hi = w.support
        return lo * M, hi * M
    # Gaussian: exp(-pi ((x-c)/s)^2) < 1e-20 beyond |x - c| > 3.9 s
    c, s = w.center, w.width
    return (c - 4 * s) * M, (c + 4 * s) * M


def poisson_1d_check(chi: CubicCharacter, w, M: float) -> float:
    lhs, rhs = poisson_1d_sides(chi, w, M)
    return abs(lhs - rhs)


def chi_pair_exponents(ma, mb, n1: EisensteinInt, n2: EisensteinInt) -> np.ndarray:
    """Exponents of (m/n1)_3 * conj((m/n2)_3)."""
    return combine_exponents(symbol_exponents(ma, mb, n1), conj_exponents(symbol_exponents(ma, mb, n2)))


def poisson_2d_sides(n1, n2, w=DEFAULT_WEIGHT, M: float = 20.0, *, sqrt_minus3=SQRT_MINUS3, tail: float = 1e-14):
    """Both sides of the planar Poisson formula for chi(m) = (m/n1)_3 conj((m/n2)_3)."""
    n1, n2 = EisensteinInt.coerce(n1), EisensteinInt.coerce(n2)
    N12 = n1.norm() * n2.norm()
    if hasattr(w, "support"):
        Xmax = w.support[1] * M
    else:
        Xmax = 60.0 / (math.pi * w.rate) * M
    ma, mb = elements_of_norm_at_most(int(Xmax) + 1)
    nrm = ma * ma - ma * mb + mb * mb
    chi = exponents_to_complex(chi_pair_exponents(ma, mb, n1, n2))
    lhs = complex((np.asarray(w(nrm / M)) * chi).sum())

    s3 = sqrt_minus3
    chi_s3 = complex(exponents_to_complex(chi_pair_exponents(np.array([s3.a]), np.array([s3.b]), n1, n2))[0])
    pref = chi_s3 * g_of(n1).value * np.conj(g_of(n2).value) * M / N12

    # right side: group k by norm; stop once the transform stays below tail
    total = 0j
    K = 64
    done_upto = 0
    while True:
        ka, kb = elements_of_norm_at_most(K)
        knrm = ka * ka - ka * kb + kb * kb
        sel = knrm > done_upto
        ka, kb, knrm = ka[sel], kb[sel], knrm[sel]
        coeff = np.conj(exponents_to_complex(chi_pair_exponents(ka, kb, n1, n2)))
        norms, inv = np.unique(knrm, return_inverse=True)
        csum = np.zeros(norms.shape, complex)
        np.add.at(csum, inv, coeff)
        tvals = np.sqrt(norms * M / N12)
        checks = np.asarray(w.check_2d_array(tvals))
        total += complex((csum * checks).sum())
        done_upto = K
        if np.abs(checks[-max(1, len(checks) // 4):]).max() < tail or K > 200000:
            break
        K *= 2
    return lhs, complex(pref * total)


def poisson_2d_check(n1, n2, w=DEFAULT_WEIGHT, M: float = 20.0, **kw) -> float:
    lhs, rhs = poisson_2d_sides(n1, n2, w, M, **kw)
    return abs(lhs - rhs)


def poisson_2d_resolved(n1, n2, w=DEFAULT_WEIGHT, M: float = 20.0, *, tol: float = 1e-6) -> tuple[float, EisensteinInt]:
    """Deviation of the planar formula, flipping the branch of sqrt(-3) when the
    two sides differ by a nontrivial cube root of unity.

    Both branches give the same chi(sqrt(-3)) for cubic characters because
    chi(-1) = 1, so the flip is a guard for convention changes rather than a
    path that current inputs take.  Returns (deviation, branch used)."""
    lhs, rhs = poisson_2d_sides(n1, n2, w, M)
    dev = abs(lhs - rhs)
    if dev <= tol * max(1.0, abs(lhs)) or abs(rhs) == 0:
        return dev, SQRT_MINUS3
    phase = lhs / rhs
    if min(abs(phase - cmath.exp(2j * math.pi * k / 3)) for k in (1, 2)) < 1e-3:
        flipped = -SQRT_MINUS3
        lhs2, rhs2 = poisson_2d_sides(n1, n2, w, M, sqrt_minus3=flipped)
        return abs(lhs2 - rhs2), flipped
    return dev, SQRT_MINUS3
