import numpy as np
from hypothesis import given
from hypothesis import strategies as st

from cubica.characters import (
    CubicCharacter,
    characters_for_conductor,
    enumerate_cubic_characters,
    evaluate,
    read_character_csv,
    write_character_csv,
)
from cubica.eisenstein import EisensteinInt
from cubica.symbol import CubicValue

E = EisensteinInt

SMALL = enumerate_cubic_characters(400)


def _is_cubic_conductor(q: int) -> bool:
    from sympy import factorint

    f = factorint(q)
    return q > 1 and all(p % 3 == 1 and e == 1 for p, e in f.items())


def test_conductor_examples():
    chars = characters_for_conductor(7)
    assert {c.generator for c in chars} == {E(1, 3), E(-2, -3)}
    assert characters_for_conductor(5) == []
    assert characters_for_conductor(49) == []
    assert characters_for_conductor(9) == []


def test_enumeration_examples():
    assert len(enumerate_cubic_characters(100)) == 26
    assert enumerate_cubic_characters(6) == []
    assert len(enumerate_cubic_characters(7)) == 2


def test_enumeration_counts_match_independent_count():
    # each admissible conductor with k prime factors carries 2^k characters
    from sympy import primefactors

    expected = sum(2 ** len(primefactors(q)) for q in range(2, 401) if _is_cubic_conductor(q))
    assert len(SMALL) == expected
    assert SMALL == sorted(SMALL, key=CubicCharacter.sort_key)


def test_evaluate_examples():
    chi = CubicCharacter.from_generator(E(1, 3))
    assert evaluate(chi, 2) == CubicValue(2)
    assert chi(-1) == CubicValue(0)


@given(st.sampled_from(SMALL))
def test_character_is_periodic_and_multiplicative(chi):
    q = chi.conductor
    m = np.arange(1, 2 * q + 1)
    v = chi.values(m)
    assert np.allclose(v[:q], v[q:])
    for a, b in ((2, 3), (5, q - 1), (q + 2, 7)):
        assert abs(chi.values([a * b])[0] - chi.values([a])[0] * chi.values([b])[0]) < 1e-12


@given(st.sampled_from(SMALL))
def test_character_is_primitive_of_order_three(chi):
    q = chi.conductor
    v = chi.values(np.arange(1, q + 1))
    assert np.sum(np.abs(v) > 0.5) == sum(1 for a in range(1, q + 1) if np.gcd(a, q) == 1)
    assert np.allclose(v[np.abs(v) > 0.5] ** 3, 1)
    assert abs(v.sum()) < 1e-9
    # primitive: no proper divisor d of q is a period on units
    for d in range(1, q):
        if q % d == 0:
            a = np.arange(1, q + 1)
            units = np.gcd(a, q) == 1
            shifted = chi.values(a + d)
            assert not np.allclose(shifted[units], v[units])


@given(st.sampled_from(SMALL))
def test_conjugate_character(chi):
    m = np.arange(1, 60)
    assert np.allclose(chi.conjugate().values(m), np.conj(chi.values(m)))
    assert chi.conjugate().conjugate() == chi


def test_csv_roundtrip(tmp_path):
    p = tmp_path / "chars.csv"
    write_character_csv(SMALL, p)
    assert read_character_csv(p) == SMALL
