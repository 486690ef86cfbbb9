import math

import mpmath
import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from cubica.hurwitz import hurwitz_zeta, riemann_zeta
from cubica.weights import DEFAULT_WEIGHT, GaussianWeight, SmoothWeight


def test_zeta_two():
    assert abs(hurwitz_zeta(2.0, 1.0) - math.pi**2 / 6) < 1e-12
    assert abs(riemann_zeta(2.0) - math.pi**2 / 6) < 1e-12


@given(
    st.floats(0.4, 2.0),
    st.floats(-50, 50),
    st.floats(0.01, 1.0),
)
def test_hurwitz_against_mpmath(sr, si, a):
    s = complex(sr, si)
    if abs(s - 1) < 1e-3:
        return
    ref = complex(mpmath.zeta(mpmath.mpc(sr, si), a))
    got = complex(hurwitz_zeta(s, a))
    assert abs(got - ref) < 1e-10 * max(1.0, abs(ref))


def test_hurwitz_vectorised():
    a = np.array([0.1, 0.5, 0.9])
    z = hurwitz_zeta(0.5, a)
    for x, v in zip(a, z):
        assert abs(v - complex(mpmath.zeta(0.5, x))) < 1e-11


def test_bump_weight_basics():
    w = DEFAULT_WEIGHT
    assert w.support == (1.0, 2.0)
    assert w(1.0) == 0 and w(2.0) == 0 and w(1.5) > 0
    ref = mpmath.quad(lambda x: mpmath.exp(-1 / ((x - 1) * (2 - x))), [1, 1.5, 2])
    assert abs(w.integral - float(ref)) < 1e-12
    assert abs(w.mellin(1.0) - w.integral) < 1e-12
    assert abs(w.fourier(0.0) - w.integral) < 1e-12


def test_rescaled_bump():
    w = SmoothWeight(2.0, 4.0)
    assert abs(w.integral - 2 * DEFAULT_WEIGHT.integral) < 1e-12


@given(st.floats(-3, 3))
def test_gaussian_fourier_closed_form(xi):
    w = GaussianWeight(1.5, 0.5)
    ref = complex(mpmath.quad(lambda x: mpmath.exp(-mpmath.pi * ((x - 1.5) / 0.5) ** 2) * mpmath.exp(-2j * mpmath.pi * x * xi), [-mpmath.inf, 1.5, mpmath.inf]))
    assert abs(complex(w.fourier(xi)) - ref) < 1e-12
