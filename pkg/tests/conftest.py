import random

import pytest
from hypothesis import settings

from matimage.gf import make_field
from matimage.mat import Matrix2

settings.register_profile("default", deadline=None, max_examples=200)
settings.load_profile("default")

F2, F3, F4, F5, F9 = (make_field(2), make_field(3), make_field(2, 2), make_field(5), make_field(3, 2))


def rand_matrix(rng: random.Random, field, nonzero=False):
    lo = 1 if nonzero else 0
    return Matrix2.from_code(field, rng.randrange(lo, field.q**4))


def rand_invertible(rng: random.Random, field):
    while True:
        m = rand_matrix(rng, field)
        if m.det():
            return m


def mat(field, text):
    return Matrix2.parse(field, text)


@pytest.fixture
def rng():
    return random.Random(0)
