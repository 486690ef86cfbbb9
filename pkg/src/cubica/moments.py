"""Moments of L(1/2, chi) over the cubic family and the main-term constant.

The first moment is compared with c * Q * w^(0), where w^(0) is the integral of
the weight (which is also its Mellin transform at 1).
"""

from __future__ import annotations

import csv
import math
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np
from scipy import special

from .cache import CacheEntry, LValueCache, alpha_key
from .characters import CubicCharacter, enumerate_cubic_characters
from .eisenstein import EisensteinInt, primes_up_to
from .errors import ConsistencyFailure
from .hecke import dedekind_constants
from .lfunctions import l_value_afe
from .weights import DEFAULT_WEIGHT

Z_ROUTE_TOL = 1e-6
SERIES_LIMIT = 4_000_000
EULER_LIMIT = 1_000_000


# ----------------------------------------------------------------------
# the constant c


def _local_weights(p: np.ndarray) -> np.ndarray:
    """Weight of a prime p != 3 dividing m in the summand of Z."""
    split = p % 3 == 1
    w = np.empty(p.shape, dtype=float)
    ps = p[split].astype(float)
    pi = p[~split].astype(float)
    w[split] = (1 + 1 / ps) ** -2 / (1 - ps**-2)
    w[~split] = 1 / (1 - pi**-4)
    return w


THREE_FACTOR_WEIGHT = (3 / 4) * (9 / 8)


def z_local_factor_at_3(u: float = 1.5) -> float:
    """Local factor of Z(u) at 3: every m carries the factor for pi | 3 and p = 3."""
    return THREE_FACTOR_WEIGHT / (1 - 3.0**-u)


def z_three_halves_series(limit: int = SERIES_LIMIT) -> tuple[float, float]:
    """Z(3/2) by direct summation of its defining series up to ``limit``.

    The tail is estimated from the mean value F = S(limit)/limit of the summand
    coefficients: sum_{m > M} f(m) m^(-3/2) ~ F (2 M^(-1/2) - M^(-3/2)/2).
    Returns (value, tail estimate).
    """
    f = np.full(limit + 1, THREE_FACTOR_WEIGHT)
    f[0] = 0.0
    ps = primes_up_to(limit)
    ps = ps[ps != 3]
    for p, wp in zip(ps.tolist(), _local_weights(ps).tolist()):
        f[p::p] *= wp
    m = np.arange(1, limit + 1, dtype=float)
    head = float(np.sum(f[1:] * m**-1.5))
    F = float(f[1:].sum()) / limit
    tail = F * (2 * limit**-0.5 - 0.5 * limit**-1.5)
    return head + tail, tail


def _prime_tail(P: float) -> float:
    """Approximate sum over primes p > P of p^(-3/2), as E1(log(P)/2)."""
    return float(special.exp1(0.5 * math.log(P)))


def z_three_halves_euler(limit: int = EULER_LIMIT) -> tuple[float, float]:
    """Z(3/2) as an Euler product over primes up to ``limit`` plus a tail correction."""
    ps = primes_up_to(limit)
    ps = ps[ps != 3]
    x = ps.astype(float) ** -1.5
    log_prod = float(np.sum(np.log1p(_local_weights(ps) * x / (1 - x))))
    tail = _prime_tail(limit)
    return z_local_factor_at_3() * math.exp(log_prod + tail), tail


@dataclass(frozen=True)
class ConstantReport:
    c: float
    c_omega: float
    zeta_K_2: float
    zeta_2: float
    z_series: float
    z_euler: float
    z_series_tail: float
    z_euler_tail: float

    @property
    def route_gap(self) -> float:
        return abs(self.z_series - self.z_euler)


def constant_c_report(series_limit: int = SERIES_LIMIT, euler_limit: int = EULER_LIMIT) -> ConstantReport:
    zs, ts = z_three_halves_series(series_limit)
    ze, te = z_three_halves_euler(euler_limit)
    if abs(zs - ze) > Z_ROUTE_TOL:
        raise ConsistencyFailure(f"Z(3/2) routes disagree: series {zs!r}, Euler product {ze!r}")
    k = dedekind_constants()
    zeta2 = math.pi**2 / 6
    c = k.c_omega / k.zeta_Qw_2 / zeta2 * ze
    return ConstantReport(c, k.c_omega, k.zeta_Qw_2, zeta2, zs, ze, ts, te)


_C_CACHE: dict = {}


def constant_c() -> float:
    """c = c_omega / (zeta_K(2) zeta(2)) * Z(3/2), both routes for Z cross-checked."""
    if "c" not in _C_CACHE:
        _C_CACHE["c"] = constant_c_report().c
    return _C_CACHE["c"]


def family_density(limit: int = EULER_LIMIT) -> float:
    """Density of conductors counted with multiplicity: #{chi : q <= X} ~ D X.

    The generating series is prod_{p = 1 mod 3} (1 + 2 p^-s); its residue at
    s = 1 is c_omega (1 - 1/3) prod_split (1-1/p)^2 (1+2/p) prod_inert (1 - p^-2).
    """
    ps = primes_up_to(limit)
    ps = ps[ps != 3]
    split = ps % 3 == 1
    x = 1.0 / ps.astype(float)
    log_prod = np.sum(np.log1p(-3 * x[split] ** 2 + 2 * x[split] ** 3)) + np.sum(np.log1p(-x[~split] ** 2))
    # tail: sum over p > limit of about -2 p^-2 (average of -3 and -1)
    tail = -2.0 / (limit * math.log(limit))
    return dedekind_constants().c_omega * (2 / 3) * math.exp(log_prod + tail)


def constant_c_family(limit: int = EULER_LIMIT) -> float:
    """Main-term constant of the family with the coprimality of the cube k and
    the conductor kept: D * sum_k k^(-3/2) prod_{split p | k} (1 + 2/p)^-1."""
    ps = primes_up_to(limit)
    x = ps.astype(float) ** -1.5
    split = ps % 3 == 1
    local = np.where(split, 1 + x / (1 - x) / (1 + 2.0 / ps), 1 / (1 - x))
    log_prod = float(np.sum(np.log(local))) + _prime_tail(limit)
    return family_density(limit) * math.exp(log_prod)


def cube_diagonal(Q: float, w=DEFAULT_WEIGHT, kmax: int = 10**6) -> float:
    """Sum over the family of w(q/Q) * sum_{(k,q)=1, k <= kmax} k^(-3/2).

    This is the cube contribution to the first moment with an untruncated
    first sum; divided by Q w^(0) it tends to :func:`constant_c_family`.
    """
    lo, hi = w.support
    chars = enumerate_cubic_characters(int(hi * Q), lower=int(lo * Q))
    k = np.arange(1, kmax + 1, dtype=float)
    total_k = float(np.sum(k**-1.5)) + 2 * kmax**-0.5
    out = 0.0
    for chi in chars:
        s = total_k
        q = chi.conductor
        # remove k sharing a prime with q: inclusion-exclusion over prime divisors
        ps = [p for p in _prime_divisors(q)]
        for mask in range(1, 1 << len(ps)):
            d = 1
            bits = 0
            for i, p in enumerate(ps):
                if mask >> i & 1:
                    d *= p
                    bits += 1
            s += (-1) ** bits * d**-1.5 * total_k
        out += float(w(q / Q)) * s
    return out


def _prime_divisors(q: int) -> list[int]:
    from sympy import primefactors

    return list(primefactors(q))


# ----------------------------------------------------------------------
# moment drivers


@dataclass
class MomentReport:
    Q: float
    n_characters: int
    moment_value: complex
    main_term: float
    ratio: float
    wall_time: float
    main_term_family: float = float("nan")
    ratio_family: float = float("nan")
    extras: dict = field(default_factory=dict)


def _lvalues_chunk(args) -> list[complex]:
    gens, alpha = args
    out = []
    for a, b, q in gens:
        chi = CubicCharacter(EisensteinInt(a, b), q)
        out.append(l_value_afe(chi, alpha=alpha).value)
    return out


def central_values(chars: list[CubicCharacter], alpha: complex = 0.0, *, workers: int = 1, cache: LValueCache | None = None) -> np.ndarray:
    """L(1/2 + alpha, chi) for each character (AFE with A = sqrt(q)), in input order."""
    alpha = complex(alpha)
    akey = alpha_key(alpha)
    out = np.empty(len(chars), dtype=complex)
    todo = []
    for i, chi in enumerate(chars):
        hit = None
        if cache is not None:
            hit = cache.get(("afe", chi.conductor, chi.generator.a, chi.generator.b, akey))
        if hit is not None:
            out[i] = hit.value
        else:
            todo.append(i)
    gens = [(chars[i].generator.a, chars[i].generator.b, chars[i].conductor) for i in todo]
    if workers > 1 and len(gens) > 64:
        size = max(16, len(gens) // (8 * workers))
        chunks = [(gens[j : j + size], alpha) for j in range(0, len(gens), size)]
        with ProcessPoolExecutor(max_workers=workers) as ex:
            vals = [v for part in ex.map(_lvalues_chunk, chunks) for v in part]
    else:
        vals = _lvalues_chunk((gens, alpha))
    for i, v in zip(todo, vals):
        out[i] = v
        if cache is not None:
            chi = chars[i]
            cache.put(
                CacheEntry("afe", chi.conductor, chi.generator.a, chi.generator.b, akey, v.real, v.imag, "AFE", 0.0)
            )
    return out


def first_moment(Q: float, w=DEFAULT_WEIGHT, *, workers: int = 1, cache: LValueCache | None = None) -> MomentReport:
    """sum over the family of L(1/2, chi) w(q/Q), compared with c Q w^(0)."""
    if Q < 7:
        raise ValueError("Q must be >= 7")
    t0 = time.perf_counter()
    lo, hi = w.support
    chars = enumerate_cubic_characters(int(math.floor(hi * Q)), lower=int(math.floor(lo * Q)))
    qs = np.array([chi.conductor for chi in chars], dtype=float)
    wt = np.asarray(w(qs / Q)) if len(chars) else np.zeros(0)
    keep = wt != 0
    chars = [c for c, k in zip(chars, keep) if k]
    wt = wt[keep]
    L = central_values(chars, workers=workers, cache=cache)
    # deterministic ordered reduction
    moment = complex(math.fsum((wt * L.real).tolist()), math.fsum((wt * L.imag).tolist()))
    main = constant_c() * Q * w.integral
    main_fam = constant_c_family() * Q * w.integral
    return MomentReport(
        Q,
        len(chars),
        moment,
        main,
        moment.real / main,
        time.perf_counter() - t0,
        main_fam,
        moment.real / main_fam,
    )


def second_moment(Q: float, t: float = 0.0, *, workers: int = 1, cache: LValueCache | None = None) -> float:
    """sum over conductors q <= Q of sum* |L(1/2 + it, chi)|^2."""
    if Q < 7:
        raise ValueError("Q must be >= 7")
    chars = enumerate_cubic_characters(int(Q))
    L = central_values(chars, 1j * t, workers=workers, cache=cache)
    return math.fsum((np.abs(L) ** 2).tolist())


@dataclass(frozen=True)
class NonvanishingReport:
    count: int
    total: int
    min_abs: float


def nonvanishing_count(Q: float, threshold: float = 1e-6, *, workers: int = 1, cache: LValueCache | None = None) -> NonvanishingReport:
    if threshold <= 0:
        raise ValueError("threshold must be positive")
    chars = enumerate_cubic_characters(int(Q))
    L = central_values(chars, workers=workers, cache=cache)
    a = np.abs(L)
    return NonvanishingReport(int(np.sum(a > threshold)), len(chars), float(a.min()) if len(a) else math.inf)


def write_moment_csv(reports, path, *, timing: bool = False) -> None:
    """Moment table; wall-clock seconds are only written with ``timing`` so
    that reruns are byte-identical by default."""
    with Path(path).open("w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["Q", "n_characters", "re_moment", "main_term", "ratio"] + (["seconds"] if timing else []))
        for r in reports:
            row = [r.Q, r.n_characters, repr(r.moment_value.real), repr(r.main_term), repr(r.ratio)]
            if timing:
                row.append(f"{r.wall_time:.3f}")
            w.writerow(row)
