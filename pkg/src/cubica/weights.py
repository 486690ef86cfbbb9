"""Test weights and their integral transforms.

The default :class:`SmoothWeight` is the bump exp(-1/((x-1)(2-x))) on (1, 2).
Transforms are evaluated by adaptive quadrature and cached per argument.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np
from scipy import integrate, special

QUAD_TOL = 1e-13


def _bump(x):
    x = np.asarray(x, dtype=float)
    out = np.zeros_like(x)
    inside = (x > 1.0) & (x < 2.0)
    xi = x[inside]
    out[inside] = np.exp(-1.0 / ((xi - 1.0) * (2.0 - xi)))
    return out


@dataclass(frozen=True)
class SmoothWeight:
    """Nonnegative smooth bump supported in (lo, hi): the reference bump
    exp(-1/((x-1)(2-x))) pulled back along the affine map (lo, hi) -> (1, 2)."""

    lo: float = 1.0
    hi: float = 2.0
    _cache: dict = field(default_factory=dict, compare=False, repr=False)

    def __call__(self, x):
        x = np.asarray(x, dtype=float)
        # affine map onto the reference interval (1, 2)
        return _bump(1.0 + (x - self.lo) / (self.hi - self.lo))

    @property
    def support(self) -> tuple[float, float]:
        return (self.lo, self.hi)

    def _quad(self, f) -> float:
        val, _ = integrate.quad(f, self.lo, self.hi, epsabs=QUAD_TOL, epsrel=QUAD_TOL, limit=400)
        return val

    @cached_property
    def integral(self) -> float:
        """Integral of w, equal to both its Fourier transform at 0 and its Mellin transform at 1."""
        return self._quad(lambda x: float(self(x)))

    def mellin(self, s: complex) -> complex:
        """Mellin transform: integral of w(x) x^(s-1) dx."""
        s = complex(s)
        key = ("mellin", s)
        if key not in self._cache:
            re = self._quad(lambda x: float(self(x)) * (x ** (s - 1)).real)
            im = self._quad(lambda x: float(self(x)) * (x ** (s - 1)).imag)
            self._cache[key] = complex(re, im)
        return self._cache[key]

    def fourier(self, xi: float) -> complex:
        """Fourier transform: integral of w(x) exp(-2 pi i x xi) dx."""
        xi = float(xi)
        key = ("fourier", xi)
        if key not in self._cache:
            re = self._quad(lambda x: float(self(x)) * math.cos(2 * math.pi * x * xi))
            im = self._quad(lambda x: -float(self(x)) * math.sin(2 * math.pi * x * xi))
            self._cache[key] = complex(re, im)
        return self._cache[key]

    def check_2d(self, t: float) -> float:
        """The planar transform of x + y*omega -> w(N(x + y*omega)) at frequency t.

        Reduces to a Hankel transform:
        (2 pi / sqrt 3) * integral of w(x) J0(4 pi t sqrt(x) / sqrt 3) dx.
        """
        t = float(t)
        key = ("check", t)
        if key not in self._cache:
            k = 4 * math.pi * t / math.sqrt(3)
            val = self._quad(lambda x: float(self(x)) * special.j0(k * math.sqrt(x)))
            self._cache[key] = 2 * math.pi / math.sqrt(3) * val
        return self._cache[key]

    def check_2d_array(self, t, nodes: int = 1000) -> np.ndarray:
        """Vectorised :meth:`check_2d` by fixed Gauss-Legendre quadrature.

        The bump vanishes to infinite order at the endpoints, so a fixed rule
        agrees with the adaptive one to ~1e-17 for t <= 100.
        """
        t = np.atleast_1d(np.asarray(t, dtype=float))
        x, wt = np.polynomial.legendre.leggauss(nodes)
        half = 0.5 * (self.hi - self.lo)
        x = self.lo + half * (x + 1.0)
        fx = self(x) * wt * half
        out = np.empty(t.shape)
        k = 4 * math.pi / math.sqrt(3) * t
        sx = np.sqrt(x)
        for i in range(0, t.size, 512):
            out[i : i + 512] = special.j0(k[i : i + 512, None] * sx[None, :]) @ fx
        return 2 * math.pi / math.sqrt(3) * out


@dataclass(frozen=True)
class GaussianWeight:
    """w(x) = exp(-pi ((x - center)/width)^2), a rapidly decaying (not compactly
    supported) weight with closed-form transforms."""

    center: float = 0.0
    width: float = 1.0

    def __call__(self, x):
        x = np.asarray(x, dtype=float)
        return np.exp(-math.pi * ((x - self.center) / self.width) ** 2)

    @property
    def integral(self) -> float:
        return self.width

    def fourier(self, xi):
        xi = np.asarray(xi, dtype=float)
        return self.width * np.exp(-math.pi * (self.width * xi) ** 2) * np.exp(
            -2j * math.pi * self.center * xi
        )


@dataclass(frozen=True)
class ExponentialWeight:
    """w(x) = exp(-pi * rate * x); as a function of N(z) on Z[omega] this is a
    planar Gaussian, so its planar transform is explicit."""

    rate: float = 1.0

    def __call__(self, x):
        return np.exp(-math.pi * self.rate * np.asarray(x, dtype=float))

    def check_2d(self, t):
        t = np.asarray(t, dtype=float)
        return 2.0 / (math.sqrt(3) * self.rate) * np.exp(-4 * math.pi * t * t / (3 * self.rate))

    check_2d_array = check_2d


DEFAULT_WEIGHT = SmoothWeight()
