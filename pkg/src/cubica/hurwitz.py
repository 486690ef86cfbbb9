"""Hurwitz zeta function by Euler-Maclaurin summation (complex s, real a > 0)."""

from __future__ import annotations

import math

import numpy as np
from scipy.special import bernoulli

from .errors import PoleAtOne

EM_TERMS = 8
MIN_SHIFT = 20.0

_B2J = bernoulli(2 * EM_TERMS + 2)
# B_{2j} / (2j)!
_EM_COEFFS = np.array([_B2J[2 * j] / math.factorial(2 * j) for j in range(1, EM_TERMS + 2)])


def hurwitz_zeta(s: complex, a, *, return_error: bool = False):
    """zeta(s, a) = sum_{k>=0} (a + k)^(-s), vectorised over ``a``.

    The first terms are summed directly until a + N exceeds max(20, 2|s|),
    then eight Euler-Maclaurin corrections are added. With ``return_error``
    the magnitude of the first omitted correction is also returned.  Scalar
    ``a`` gives scalar results.
    """
    s = complex(s)
    scalar = np.ndim(a) == 0
    if s == 1:
        raise PoleAtOne("zeta(s, a) has a pole at s = 1")
    a = np.atleast_1d(np.asarray(a, dtype=float))
    if np.any(a <= 0):
        raise ValueError("a must be positive")
    R = max(MIN_SHIFT, 2.0 * abs(s))
    N = max(0, int(math.ceil(R - float(a.min()))))
    k = np.arange(N, dtype=float)
    head = np.exp(-s * np.log(a[:, None] + k[None, :])).sum(axis=1) if N else np.zeros(a.shape, complex)
    x = a + N
    logx = np.log(x)
    total = head + np.exp((1 - s) * logx) / (s - 1) + 0.5 * np.exp(-s * logx)
    poch = s  # s (s+1) ... (s + 2j - 2)
    err = None
    for j in range(1, EM_TERMS + 2):
        term = _EM_COEFFS[j - 1] * poch * np.exp(-(s + 2 * j - 1) * logx)
        if j <= EM_TERMS:
            total = total + term
            poch = poch * (s + 2 * j - 1) * (s + 2 * j)
        else:
            err = np.abs(term)
    if scalar:
        total, err = complex(total[0]), float(err[0])
    if return_error:
        return total, err
    return total


def riemann_zeta(s: complex) -> complex:
    return hurwitz_zeta(s, 1.0)
