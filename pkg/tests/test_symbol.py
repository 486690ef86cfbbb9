import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from cubica.eisenstein import EisensteinInt, factorize, primary_associate, residues_mod
from cubica.errors import BadModulus, NotPrime
from cubica.symbol import (
    CubicValue,
    combine_exponents,
    conj_exponents,
    exponents_to_complex,
    rational_symbol_exponents,
    supplement_values,
    symbol,
    symbol_by_factorization,
    symbol_definitional,
    symbol_exponents,
)

from strategies import eisenstein, primary_nontrivial

E = EisensteinInt
W = CubicValue.omega_power


def _is_cube_mod(m: EisensteinInt, pi: EisensteinInt) -> bool:
    """Independent oracle: scan the cubes of a full residue system mod pi."""
    u_, v_ = residues_mod(pi)
    return any(pi.divides(m - E(int(a), int(b)) ** 3) for a, b in zip(u_, v_))


def test_definitional_examples():
    assert symbol_definitional(2, E(1, 3)) == W(2)
    assert symbol_definitional(E(1, 3) * 5, E(1, 3)).is_zero
    for pi in (E(1, 3), E(-2, -3), E(-5, 0), E(4, 3)):
        assert symbol_definitional(8, pi) == W(0)


def test_symbol_example():
    assert symbol(2, E(1, 3)) == W(2)


def test_definitional_rejects_composites():
    with pytest.raises(NotPrime):
        symbol_definitional(2, E(7, 0))
    with pytest.raises(NotPrime):
        symbol_definitional(2, E(1, -1))


def test_symbol_rejects_nonprimary():
    with pytest.raises(BadModulus):
        symbol(2, E(2, 0))


@pytest.mark.parametrize("pi", [E(1, 3), E(-2, -3), E(-2, 0), E(4, 3), E(-5, -3), E(-5, 0)])
def test_definitional_detects_cubes(pi):
    """(m/pi) = 1 exactly on nonzero cubes and 0 exactly on multiples of pi."""
    for a in range(-4, 5):
        for b in range(-4, 5):
            m = E(a, b)
            val = symbol_definitional(m, pi)
            assert val.is_zero == pi.divides(m)
            if not val.is_zero:
                assert (val == W(0)) == _is_cube_mod(m, pi)


def test_supplement_examples():
    s = supplement_values(E(1, 3))
    assert s.s_three == W(1)
    assert s.s_omega == W(2)
    # n = 1 mod 9 has c = d = 0 mod 3
    assert supplement_values(E(10, 9)).s_three == W(0)
    assert supplement_values(E(-8, 0)).s_three == W(0)


@given(eisenstein, primary_nontrivial)
def test_reciprocity_matches_definition(m, n):
    assert symbol(m, n) == symbol_by_factorization(m, n)


@given(primary_nontrivial)
def test_supplements_match_definition(n):
    s = supplement_values(n)
    assert symbol_by_factorization(E(0, 1), n) == s.s_omega
    assert symbol_by_factorization(E(1, -1), n) == s.s_one_minus_omega
    assert symbol_by_factorization(3, n) == s.s_three


@given(eisenstein, eisenstein, primary_nontrivial)
def test_multiplicative_in_numerator(m1, m2, n):
    assert symbol(m1 * m2, n) == symbol(m1, n) * symbol(m2, n)


@given(eisenstein, primary_nontrivial, primary_nontrivial)
def test_multiplicative_in_denominator(m, n1, n2):
    assert symbol(m, n1 * n2) == symbol(m, n1) * symbol(m, n2)


@given(st.integers(-200, 200), primary_nontrivial)
def test_even_and_conjugation(m, n):
    assert symbol(-1, n) == W(0)
    # complex conjugation: conj((m/n)) = (conj m / conj n), and the conjugate of a primary element is primary
    assert symbol(E(m, 0), n).conjugate() == symbol(E(m, 0), n.conjugate())


@given(primary_nontrivial, primary_nontrivial)
def test_cubic_reciprocity(m, n):
    if factorize(m).factors and any(f.prime.divides(n) for f in factorize(m).factors):
        return
    assert symbol(m, n) == symbol(n, m)


@given(primary_nontrivial)
def test_vectorised_tables(n):
    ma = np.arange(-20, 21, dtype=np.int64)
    mb = np.arange(7, -34, -1, dtype=np.int64)
    ex = symbol_exponents(ma, mb, n)
    for x, y, e in zip(ma.tolist(), mb.tolist(), ex.tolist()):
        assert symbol(E(x, y), n).exponent == e
    ex2 = rational_symbol_exponents(5, np.array([n.a]), np.array([n.b]))
    assert ex2[0] == symbol(5, n).exponent


def test_exponent_algebra():
    e1 = np.array([-1, 0, 1, 2, 2], dtype=np.int8)
    e2 = np.array([1, -1, 2, 2, 0], dtype=np.int8)
    assert combine_exponents(e1, e2).tolist() == [-1, -1, 0, 1, 2]
    assert conj_exponents(e1).tolist() == [-1, 0, 2, 1, 1]
    z = exponents_to_complex(e1)
    assert z[0] == 0 and abs(z[2] ** 3 - 1) < 1e-12


def test_cubic_value_algebra():
    assert W(1) * W(2) == W(0)
    assert (W(1) ** 3) == W(0)
    assert CubicValue.zero() * W(1) == CubicValue.zero()
    assert W(1).conjugate() == W(2)
    assert CubicValue.from_exponent(-1).is_zero
    assert W(2).as_eisenstein() == E(-1, -1)
    assert primary_associate(E(-1, -3)) == E(1, 3)
