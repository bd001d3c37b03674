import random
from fractions import Fraction

import pytest


@pytest.fixture
def rng():
    return random.Random(20170919)


def rand_rational(rng, allow_zero=True) -> Fraction:
    num = rng.randint(-9, 9)
    if not allow_zero:
        while num == 0:
            num = rng.randint(-9, 9)
    return Fraction(num, rng.randint(1, 8))


def rand_table(rng, length: int) -> list:
    return [rand_rational(rng) for _ in range(length)]
