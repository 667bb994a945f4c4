import random
from fractions import Fraction

import pytest

from slicelab.catalog import Cat, EightMinus, EightPlus, realize_catalog


def random_catalog_spec(rng: random.Random, allow_cat: bool = True):
    """A random small catalog spec with rational areas."""
    def area():
        return Fraction(rng.randint(1, 40), rng.randint(1, 8))

    kind = rng.random()
    if kind < 0.4 or not allow_cat:
        return EightPlus(area())
    if kind < 0.6:
        return EightMinus(area())
    signs = tuple(rng.choice((1, -1)) for _ in range(3))
    while True:
        a1, a2, a3 = area(), area(), area()
        if a1 - a2 + a3 > 0 and a1 != a2:  # keep the table generic
            return Cat(signs, (a1, a2, a3))


@pytest.fixture
def rng():
    return random.Random(20260809)


@pytest.fixture
def realize_random(rng):
    def make(allow_cat=True):
        return realize_catalog(random_catalog_spec(rng, allow_cat))

    return make
