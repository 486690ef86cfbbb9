"""Shared hypothesis strategies for Eisenstein integers."""

from hypothesis import strategies as st

from cubica.eisenstein import EisensteinInt

coords = st.integers(min_value=-60, max_value=60)

eisenstein = st.builds(EisensteinInt, coords, coords)
nonzero = eisenstein.filter(lambda z: not z.is_zero())
primary = st.builds(lambda c, d: EisensteinInt(1 + 3 * c, 3 * d), st.integers(-15, 15), st.integers(-15, 15))
primary_nontrivial = primary.filter(lambda n: n.norm() > 1)
