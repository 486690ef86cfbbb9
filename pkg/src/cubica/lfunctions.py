"""Central values of cubic Dirichlet L-functions.

Cubic characters are even (chi(-1) = chi(-1)^3 = 1), so the completed function
is Lambda(s) = (q/pi)^(s/2) Gamma(s/2) L(s, chi) with root number
tau(chi)/sqrt(q).  With A*B = q the approximate functional equation reads

    L(1/2+a, chi) = sum chi(m) m^(-1/2-a) V_a(m/A)
                    + eps(chi) X_a sum conj(chi(m)) m^(-1/2+a) V_{-a}(m/B)

where V_a(x) = (1/2 pi i) int pi^(-s/2) Gamma((s+a+1/2)/2)/Gamma((a+1/2)/2) x^(-s) ds/s
(G(s) = 1) and X_a = (q/pi)^(-a) Gamma((1/2-a)/2)/Gamma((1/2+a)/2).

With G = 1 the integral has the closed form Gamma(1/4+a/2, pi x^2)/Gamma(1/4+a/2),
which is used as a cross-check of the contour quadrature.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass
from pathlib import Path

import numpy as np
from scipy import special

from .characters import CubicCharacter
from .errors import NotPrimitive, PoleAtOne
from .gauss import g_multiplicative
from .hurwitz import hurwitz_zeta

V_CUTOFF = 1e-12
LINE = 1.5
STEP = 0.1
SMALL_X = 0.1
SMALL_STEP = 0.02
HALF_WIDTH = 60.0


@dataclass(frozen=True)
class LValueResult:
    value: complex
    method: str  # "AFE", "Hurwitz" or "DirectSeries"
    split_A: float | None = None
    est_error: float = 0.0


@dataclass(frozen=True)
class GammaFactor:
    """gamma(s) = c^(-s) Gamma(kappa*s + shift); the V integrand is
    gamma(1/2 + alpha + s) / gamma(1/2 + alpha) x^(-s) / s."""

    kappa: float
    shift: float
    log_c: float

    def a0(self, alpha: complex) -> complex:
        return self.kappa * (0.5 + alpha) + self.shift

    def ratio(self, s: np.ndarray, alpha: complex) -> np.ndarray:
        a0 = self.a0(alpha)
        return np.exp(special.loggamma(a0 + self.kappa * s) - special.loggamma(a0) - s * self.log_c)

    def first_pole(self, alpha: complex) -> float:
        """Real part of the rightmost pole of s -> Gamma(a0 + kappa s)."""
        return -complex(self.a0(alpha)).real / self.kappa


# even Dirichlet characters: pi^(-s/2) Gamma(s/2)
DIRICHLET_EVEN = GammaFactor(0.5, 0.0, 0.5 * math.log(math.pi))


def _v_line(x: np.ndarray, alpha: complex, sigma: float, h: float, gf: GammaFactor) -> np.ndarray:
    """Trapezoid rule for the V integral on Re s = sigma."""
    width = HALF_WIDTH / (2 * gf.kappa) + abs(complex(alpha).imag)
    y = np.arange(-width, width + h / 2, h)
    s = sigma + 1j * y
    base = gf.ratio(s, alpha) / s * h / (2 * math.pi)
    logx = np.log(x)
    out = np.empty(x.shape, complex)
    for i in range(0, x.size, 256):
        out[i : i + 256] = np.exp(-np.outer(logx[i : i + 256], s)) @ base
    return out


def v_function(x, alpha: complex = 0.0, gamma_factor: GammaFactor = DIRICHLET_EVEN):
    """V_alpha(x) by Mellin-Barnes quadrature.

    For x >= 0.1 the line Re s = 1.5 is used.  Smaller x moves the contour
    halfway to the first Gamma pole (Re s = -(1/2 + Re alpha)/2 for even
    characters) and adds the residue 1 at s = 0; otherwise x^(-s) would make
    the integrand large and the rule would lose digits to cancellation.
    """
    alpha = complex(alpha)
    scalar = np.ndim(x) == 0
    x = np.atleast_1d(np.asarray(x, dtype=float))
    if np.any(x <= 0):
        raise ValueError("x must be positive")
    if abs(alpha.real) >= 0.5:
        raise ValueError("|Re alpha| must be < 1/2")
    out = np.empty(x.shape, complex)
    big = x >= SMALL_X
    if big.any():
        out[big] = _v_line(x[big], alpha, LINE, STEP, gamma_factor)
    if (~big).any():
        sigma = gamma_factor.first_pole(alpha) / 2
        out[~big] = 1.0 + _v_line(x[~big], alpha, sigma, SMALL_STEP, gamma_factor)
    if alpha.imag == 0:
        out = out.real
    return out[0] if scalar else out


def v_closed_form(x, alpha: float = 0.0):
    """Gamma(1/4 + a/2, pi x^2)/Gamma(1/4 + a/2) for real alpha."""
    return special.gammaincc(0.25 + alpha / 2, math.pi * np.asarray(x, dtype=float) ** 2)


def _v(x: np.ndarray, alpha: complex) -> np.ndarray:
    if complex(alpha).imag == 0:
        return v_closed_form(x, complex(alpha).real)
    return v_function(x, alpha)


def x_factor(q: int, alpha: complex) -> complex:
    """X_alpha = (q/pi)^(-alpha) Gamma((1/2-alpha)/2) / Gamma((1/2+alpha)/2)."""
    alpha = complex(alpha)
    return complex(
        np.exp(
            -alpha * math.log(q / math.pi)
            + special.loggamma((0.5 - alpha) / 2)
            - special.loggamma((0.5 + alpha) / 2)
        )
    )


def _cutoff(alpha: complex) -> float:
    """x beyond which |V_alpha(x)| < V_CUTOFF (V_0 drops below 1e-12 near 2.96)."""
    return 3.2 + 0.05 * abs(complex(alpha).imag)


def root_number(chi: CubicCharacter) -> complex:
    return g_multiplicative(chi.generator).value / math.sqrt(chi.conductor)


def _check_primitive(chi: CubicCharacter) -> None:
    g = chi.generator
    if chi.conductor != g.norm() or chi.conductor <= 1 or math.gcd(g.a, g.b) != 1:
        raise NotPrimitive(f"{chi} is not a primitive cubic character")


def _afe_sum(chi: CubicCharacter, L: float, alpha: complex, conj: bool) -> tuple[complex, float]:
    mmax = max(1, int(math.ceil(_cutoff(alpha) * L)))
    m = np.arange(1, mmax + 1, dtype=np.int64)
    vals = chi.values(m)
    if conj:
        vals = np.conj(vals)
    a = -alpha if conj else alpha
    terms = vals * np.exp(-(0.5 + a) * np.log(m)) * _v(m / L, a)
    return complex(terms.sum()), float(np.abs(terms).sum())


def l_value_afe(chi: CubicCharacter, A: float | None = None, alpha: complex = 0.0, *, eps: complex | None = None) -> LValueResult:
    """L(1/2 + alpha, chi) by the approximate functional equation with split A (default sqrt(q))."""
    _check_primitive(chi)
    q = chi.conductor
    A = math.sqrt(q) if A is None else float(A)
    if A <= 0:
        raise ValueError("A must be positive")
    B = q / A
    alpha = complex(alpha)
    if eps is None:
        eps = root_number(chi)
    s1, a1 = _afe_sum(chi, A, alpha, conj=False)
    s2, a2 = _afe_sum(chi, B, alpha, conj=True)
    xf = x_factor(q, alpha) if alpha != 0 else 1.0
    value = s1 + eps * xf * s2
    est = 1e-15 * (a1 + abs(xf) * a2) + 2 * V_CUTOFF * (math.sqrt(A) + math.sqrt(B))
    return LValueResult(value, "AFE", A, est)


def l_value_hurwitz(chi: CubicCharacter, s: complex = 0.5) -> LValueResult:
    """L(s, chi) = q^(-s) sum_{a=1}^{q} chi(a) zeta(s, a/q), an independent oracle."""
    s = complex(s)
    q = chi.conductor
    if s == 1 and q == 1:
        raise PoleAtOne("L(s, chi) has a pole at s = 1 for the principal character")
    a = np.arange(1, q + 1, dtype=np.int64)
    vals = chi.values(a)
    keep = vals != 0
    z, err = hurwitz_zeta(s, a[keep] / q, return_error=True)
    qs = np.exp(-s * math.log(q))
    value = complex(qs * (vals[keep] * z).sum())
    est = float(abs(qs) * err.sum()) + 1e-15 * float(abs(qs) * np.abs(z).sum())
    return LValueResult(value, "Hurwitz", None, est)


def l_value_direct(chi: CubicCharacter, s: complex, terms: int = 10**6) -> LValueResult:
    """Partial Dirichlet series, only meaningful for Re s > 1."""
    s = complex(s)
    m = np.arange(1, terms + 1, dtype=np.int64)
    value = complex((chi.values(m) * np.exp(-s * np.log(m))).sum())
    tail = terms ** (1 - s.real) / (s.real - 1) if s.real > 1 else math.inf
    return LValueResult(value, "DirectSeries", None, tail)


def write_lvalue_csv(rows, path) -> None:
    """rows: iterable of (CubicCharacter, LValueResult)."""
    with Path(path).open("w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["conductor", "gen_a", "gen_b", "re_L", "im_L", "method", "est_error"])
        for chi, r in rows:
            w.writerow(
                [
                    chi.conductor,
                    chi.generator.a,
                    chi.generator.b,
                    repr(float(r.value.real)),
                    repr(float(r.value.imag)),
                    r.method,
                    repr(float(r.est_error)),
                ]
            )
