"""Hecke L-series L(s, psi_m) = sum over primary n of (m/n)_3 N(n)^(-s), and
Dedekind zeta constants of Q(omega).

Partial sums are assembled by norm.  Central values use the functional
equation of the primitive Hecke character behind psi_m: for cubefree
m' = m1 m2^2 (the cube-free part of m) the completed function

    Lambda(s) = N^(s/2) (2 pi)^(-s) Gamma(s) L(s),   Lambda(s) = Lambda(1 - s),

has N = 27 (m1 m2)^2, or N = 3 (m1 m2)^2 when m' = +-1 mod 9 (then the
character is unramified at 1 - omega and psi_m misses only its Euler factor
there, which equals 1 - 3^(-s)).  Cube factors of m remove further Euler
factors at primes dividing m.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from scipy import special
from sympy import factorint

from .eisenstein import enumerate_primary_arrays, primes_above
from .hurwitz import hurwitz_zeta, riemann_zeta
from .lfunctions import GammaFactor, v_function
from .symbol import exponents_to_complex, rational_symbol_exponents, symbol_exponents

HECKE_GAMMA = GammaFactor(1.0, 0.0, math.log(2 * math.pi))


@dataclass(frozen=True)
class DedekindConstants:
    c_omega: float
    zeta_Qw_2: float
    L2_chi_minus3: float


def l_chi_minus3(s: complex) -> complex:
    """L(s, chi_-3) = 3^(-s) (zeta(s, 1/3) - zeta(s, 2/3))."""
    z = hurwitz_zeta(s, np.array([1 / 3, 2 / 3]))
    return complex(3.0 ** (-complex(s)) * (z[0] - z[1]))


@lru_cache(maxsize=1)
def dedekind_constants() -> DedekindConstants:
    L2 = l_chi_minus3(2.0).real
    return DedekindConstants(math.pi / (3 * math.sqrt(3)), math.pi**2 / 6 * L2, L2)


def dedekind_zeta(s: complex) -> complex:
    """zeta_{Q(omega)}(s) = zeta(s) L(s, chi_-3)."""
    return riemann_zeta(s) * l_chi_minus3(s)


def dedekind_residue_probe(delta: float = 1e-3) -> float:
    """(s - 1) zeta(s) L(s, chi_-3) at s = 1 + delta (tends to c_omega)."""
    s = 1 + delta
    return float(((s - 1) * dedekind_zeta(s)).real)


# ----------------------------------------------------------------------
# coefficients and partial sums


def hecke_coefficients(m: int, K: int) -> np.ndarray:
    """b[k] = sum over primary n with N(n) = k of (m/n)_3, for k = 0..K (complex)."""
    a, b, nrm = enumerate_primary_arrays(K)
    vals = exponents_to_complex(rational_symbol_exponents(m, a, b))
    out = np.zeros(K + 1, dtype=complex)
    np.add.at(out, nrm, vals)
    return out


def hecke_l(m: int, s: complex, X: int, *, smooth: bool = False) -> complex:
    """Partial sum over primary n with N(n) <= X of (m/n)_3 N(n)^(-s).

    With ``smooth`` the sharp cutoff is replaced by the weight exp(-N(n)/X) and
    the sum runs to N(n) <= 40 X.
    """
    s = complex(s)
    K = int(40 * X) if smooth else int(X)
    b = hecke_coefficients(m, K)
    k = np.arange(1, K + 1, dtype=float)
    w = np.exp(-s * np.log(k))
    if smooth:
        w = w * np.exp(-k / X)
    return complex(np.sum(b[1:] * w))


@dataclass(frozen=True)
class ResidueProbe:
    s: float
    estimate: float
    closed_form: float
    density: float


def hecke_residue_probe(m: int = 8, delta: float = 1e-3, X: int = 10**6) -> ResidueProbe:
    """(s - 1) L(s, psi_m) at s = 1 + delta for a cube m.

    The partial sum to X is completed by the tail r X^(1-s)/(s-1), where r is
    the coefficient density measured on the same range; a second value comes
    from zeta_K(s) prod_{pi | 3m} (1 - N(pi)^(-s)) with Hurwitz zeta values.
    """
    s = 1.0 + delta
    b = hecke_coefficients(m, X).real
    k = np.arange(1, X + 1, dtype=float)
    partial = float(np.sum(b[1:] * k**-s))
    r = float(b.sum()) / X
    estimate = delta * partial + r * X ** (1 - s)
    euler = 1.0
    for p in sorted(factorint(3 * abs(m))):
        for pi in primes_above(p):
            euler *= 1 - pi.norm() ** -s
    closed = float(((s - 1) * dedekind_zeta(s)).real) * euler
    return ResidueProbe(s, estimate, closed, r)


# ----------------------------------------------------------------------
# central values


@dataclass(frozen=True)
class HeckeData:
    m: int
    cubefree: int
    conductor: int
    unramified_at_3: bool
    extra_primes: tuple[int, ...]


def cube_free_part(m: int) -> tuple[int, int]:
    """m = m' k^3 with m' cubefree (sign kept in m')."""
    if m == 0:
        raise ValueError("m must be nonzero")
    mp, k = (1 if m > 0 else -1), 1
    for p, e in factorint(abs(m)).items():
        mp *= p ** (e % 3)
        k *= p ** (e // 3)
    return mp, k


def hecke_data(m: int) -> HeckeData:
    mp, _ = cube_free_part(m)
    rad = 1
    for p in factorint(abs(mp)):
        rad *= p
    unram = mp % 9 in (1, 8)
    N = (3 if unram else 27) * rad * rad
    extra = tuple(sorted(p for p in factorint(abs(m)) if p != 3 and abs(mp) % p != 0))
    return HeckeData(m, mp, N, unram, extra)


def _euler_correction(data: HeckeData, s: complex) -> complex:
    """psi_m / (primitive L-function) as a finite Euler product at s."""
    out = 1.0 + 0j
    if data.unramified_at_3:
        out *= 1 - 3.0 ** (-s)
    for p in data.extra_primes:
        for pi in primes_above(p):
            val = exponents_to_complex(symbol_exponents(np.array([data.cubefree]), np.array([0]), pi))[0]
            out *= 1 - val * pi.norm() ** (-s)
    return out


def _primitive_coefficients(data: HeckeData, K: int) -> np.ndarray:
    """Coefficients of the primitive L-function: those of psi_{m'} with the
    Euler factor at 1 - omega restored when it is unramified."""
    b = hecke_coefficients(data.cubefree, K).real
    if data.unramified_at_3:
        # multiply by (1 - 3^-s)^-1 = sum_j 3^(-j s)
        out = b.copy()
        pw = 3
        while pw <= K:
            out[pw::pw] += b[1 : K // pw + 1]
            pw *= 3
        return out
    return b


def _x_factor_hecke(N: int, alpha: complex) -> complex:
    alpha = complex(alpha)
    return complex(
        np.exp(-alpha * math.log(N / (4 * math.pi**2)) + special.loggamma(0.5 - alpha) - special.loggamma(0.5 + alpha))
    )


def _v_hecke(y: np.ndarray, alpha: complex) -> np.ndarray:
    alpha = complex(alpha)
    if alpha == 0:
        return special.erfc(np.sqrt(2 * math.pi * y))
    if alpha.imag == 0:
        return special.gammaincc(0.5 + alpha.real, 2 * math.pi * y)
    return v_function(y, alpha, HECKE_GAMMA)


def _hecke_cutoff(alpha: complex) -> float:
    return 5.0 + 0.1 * abs(complex(alpha).imag)


def hecke_central_value(m: int, t: float = 0.0, *, split: float = 1.0) -> complex:
    """L(1/2 + it, psi_m) from the functional equation of the primitive
    character; ``split`` scales the two sums (A = split sqrt(N), B = N/A)."""
    data = hecke_data(m)
    alpha = 1j * t
    s = 0.5 + alpha
    N = data.conductor
    if abs(data.cubefree) == 1:
        return cube_l_value(m, s)
    A = split * math.sqrt(N)
    B = N / A
    K = int(math.ceil(_hecke_cutoff(alpha) * max(A, B))) + 1
    b = _primitive_coefficients(data, K)
    k = np.arange(1, K + 1, dtype=float)
    mask1 = k <= _hecke_cutoff(alpha) * A + 1
    mask2 = k <= _hecke_cutoff(alpha) * B + 1
    kk1, kk2 = k[mask1], k[mask2]
    s1 = np.sum(b[1:][mask1] * np.exp(-(0.5 + alpha) * np.log(kk1)) * _v_hecke(kk1 / A, alpha))
    s2 = np.sum(b[1:][mask2] * np.exp(-(0.5 - alpha) * np.log(kk2)) * _v_hecke(kk2 / B, -alpha))
    xf = _x_factor_hecke(N, alpha) if alpha != 0 else 1.0
    return complex((s1 + xf * s2) * _euler_correction(data, s))


def cube_l_value(m: int, s: complex) -> complex:
    """L(s, psi_m) for a cube m: zeta_K(s) prod_{pi | 3m} (1 - N(pi)^(-s))."""
    s = complex(s)
    out = dedekind_zeta(s)
    for p in sorted(factorint(3 * abs(m))):
        for pi in primes_above(p):
            out *= 1 - pi.norm() ** (-s)
    return out


@dataclass(frozen=True)
class HeckeMoments:
    M: int
    t: float
    second: float
    weighted_first: float


def hecke_moments(M: int, t: float = 0.0) -> HeckeMoments:
    """second = sum over squarefree m <= M of |L(1/2+it, psi_m)|^2;
    weighted_first = sum over m <= M of m^(-1/2) |L(1/2+it, psi_m)|.

    Every m is reduced to its cubefree part m' = m1 m2^2 before evaluation;
    the cube part only changes finitely many Euler factors."""
    if M < 1:
        raise ValueError("M must be >= 1")
    second = []
    first = []
    for m in range(1, M + 1):
        val = abs(hecke_central_value(m, t)) if not _is_cube(m) else abs(cube_l_value(m, 0.5 + 1j * t))
        first.append(val / math.sqrt(m))
        if all(e == 1 for e in factorint(m).values()):
            second.append(val * val)
    return HeckeMoments(M, t, math.fsum(second), math.fsum(first))


def _is_cube(m: int) -> bool:
    return all(e % 3 == 0 for e in factorint(m).values())
