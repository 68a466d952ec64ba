import math

import numpy as np
import pytest

from qw2d.coins import coin_hadamard, coin_identity, coin_random

S = 1 / math.sqrt(2)


@pytest.fixture
def hadamard():
    return coin_hadamard()


@pytest.fixture
def identity_coin():
    return coin_identity()


@pytest.fixture(params=[1, 2, 3, 42])
def random_coin(request):
    return coin_random(request.param)


def assert_close(a, b, tol):
    diff = np.max(np.abs(np.asarray(a) - np.asarray(b)), initial=0.0)
    assert diff <= tol, f"max difference {diff:.3g} exceeds {tol:.1g}"
