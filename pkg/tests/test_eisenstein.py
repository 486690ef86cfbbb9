import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from cubica.eisenstein import (
    ONE,
    OMEGA_COMPLEX,
    EisensteinInt,
    enumerate_primary,
    enumerate_primary_arrays,
    factorize,
    gcd,
    moebius,
    primary_associate,
    primes_up_to,
    residues_mod,
    split_prime,
    split_ramified,
    squarefree_sieve,
)
from cubica.errors import BothZero, RamifiedInput, ZeroInput

from strategies import eisenstein, nonzero, primary_nontrivial

E = EisensteinInt


def test_norm_examples():
    assert E(1, 3).norm() == 7
    assert ONE.norm() == 1
    assert E(3, -3).norm() == 27


def test_primary_associate_examples():
    assert primary_associate(E(-1, -3)) == E(1, 3)
    assert primary_associate(E(-3, -2)) == E(1, 3)
    assert primary_associate(5) == E(-5, 0)


def test_primary_associate_errors():
    with pytest.raises(ZeroInput):
        primary_associate(0)
    with pytest.raises(RamifiedInput):
        primary_associate(E(1, -1))


def test_gcd_examples():
    assert gcd(7, E(1, 3)) == E(1, 3)
    assert gcd(2, 5) == ONE
    assert gcd(E(4, 9), 0) == primary_associate(E(4, 9))
    with pytest.raises(BothZero):
        gcd(0, 0)


def test_factorize_examples():
    f = factorize(7)
    assert f.unit == ONE
    assert set(f.primes()) == {E(1, 3), E(-2, -3)}
    assert E(1, 3) * E(-2, -3) == E(7, 0)
    f2 = factorize(-2)
    assert f2.factors[0].prime == E(-2, 0) and f2.unit == ONE
    fw = factorize(E(0, 1))
    assert fw.factors == () and fw.unit == E(0, 1)


def test_moebius_examples():
    assert moebius(E(1, 3)) == -1
    assert moebius(7) == 1
    assert moebius(E(1, 3) ** 2 * E(-2, -3)) == 0


def test_enumerate_primary_examples():
    assert set(enumerate_primary(12)) == {ONE, E(-2, 0), E(1, 3), E(-2, -3)}
    assert enumerate_primary(1) == [ONE]
    assert set(enumerate_primary(12, no_rational_prime_divisor=True)) == {ONE, E(1, 3), E(-2, -3)}


def test_enumerate_matches_bruteforce_scan():
    X = 400
    a, b, nrm = enumerate_primary_arrays(X)
    got = set(zip(a.tolist(), b.tolist()))
    expected = set()
    for x in range(-40, 41):
        for y in range(-40, 41):
            z = E(x, y)
            if z.is_primary() and 0 < z.norm() <= X:
                expected.add((x, y))
    assert got == expected
    assert np.all(np.diff(nrm) >= 0)


@given(eisenstein, eisenstein, eisenstein)
def test_ring_axioms(x, y, z):
    assert (x * y) * z == x * (y * z)
    assert x * (y + z) == x * y + x * z
    assert (x * y).norm() == x.norm() * y.norm()


@given(eisenstein, eisenstein)
def test_complex_embedding_is_a_homomorphism(x, y):
    assert abs(complex(x * y) - complex(x) * complex(y)) < 1e-6 * (1 + abs(complex(x)) * abs(complex(y)))
    assert abs(complex(E(0, 1)) - OMEGA_COMPLEX) < 1e-15


@given(eisenstein, nonzero)
def test_division_with_remainder(x, y):
    q, r = divmod(x, y)
    assert q * y + r == x
    assert r.norm() < y.norm()


@given(nonzero)
def test_primary_associate_is_unique_associate(z):
    if (z.a + z.b) % 3 == 0:
        return
    p = primary_associate(z)
    assert p.is_primary()
    assert p.divides(z) and z.divides(p)


@given(nonzero, nonzero)
def test_gcd_divides_both(x, y):
    g = gcd(x, y)
    assert g.divides(x) and g.divides(y)


@given(nonzero)
def test_factorization_roundtrip(z):
    f = factorize(z)
    assert f.expand() == z
    for p, e, ram in f.factors:
        assert e >= 1
        assert ram == (p.norm() == 3)
        if not ram:
            assert p.is_primary()


@given(nonzero)
def test_split_ramified(z):
    k, rest = split_ramified(z)
    assert (rest.a + rest.b) % 3 != 0
    assert E(1, -1) ** k * rest == z


@given(st.sampled_from([7, 13, 19, 31, 37, 43, 61, 67, 73, 79, 97, 103, 109, 127]))
def test_split_primes(p):
    pi1, pi2 = split_prime(p)
    assert pi1.norm() == pi2.norm() == p
    assert pi1.is_primary() and pi2.is_primary()
    assert pi1 * pi2 == E(p, 0)


@given(primary_nontrivial)
def test_residue_system_size(n):
    if n.norm() > 3000:
        return
    u, v = residues_mod(n)
    assert u.size == n.norm()
    # pairwise incongruent: differences are never divisible by n
    pts = {(E(int(x), int(y)) % n) for x, y in zip(u, v)}
    assert len(pts) == n.norm()


def test_sieves():
    sf = squarefree_sieve(100)
    assert [k for k in range(1, 30) if sf[k]] == [1, 2, 3, 5, 6, 7, 10, 11, 13, 14, 15, 17, 19, 21, 22, 23, 26, 29]
    assert primes_up_to(30).tolist() == [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]
    assert math.prod(primes_up_to(10).tolist()) == 210
