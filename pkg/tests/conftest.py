import random
from fractions import Fraction

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from folcoh.polyring import CoordinateSystem, Polynomial
from folcoh.scalar import Scalar
from folcoh.williamson import WilliamsonBasis

settings.register_profile(
    "default", max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("default")

TYPES = [["e"], ["h"], ["ff"], ["e", "h"], ["h", "h"], ["ff", "e"], ["h", "ff"], ["e", "h", "h"]]


@pytest.fixture
def rng():
    return random.Random(20241019)


def P(basis_or_coords, text):
    coords = getattr(basis_or_coords, "coords", basis_or_coords)
    return Polynomial.parse(coords, text)


fractions = st.fractions(min_value=-6, max_value=6, max_denominator=4)


@st.composite
def scalars(draw, gaussian=True):
    re = draw(fractions)
    im = draw(fractions) if gaussian and draw(st.booleans()) else Fraction(0)
    return Scalar(re, im)


@st.composite
def exponents(draw, n, max_degree):
    e = [0] * n
    for v in draw(st.lists(st.integers(0, n - 1), max_size=max_degree)):
        e[v] += 1
    return tuple(e)


@st.composite
def polynomials(draw, coords: CoordinateSystem, max_degree=4, max_terms=5, gaussian=False):
    terms = draw(
        st.dictionaries(exponents(coords.size, max_degree), scalars(gaussian=gaussian), max_size=max_terms)
    )
    return Polynomial(coords, terms)


bases = st.sampled_from(TYPES).map(WilliamsonBasis.from_kinds)
