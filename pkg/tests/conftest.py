import numpy as np
import pytest

from taperqpe import new_grid


@pytest.fixture
def rng():
    return np.random.default_rng(1234)


@pytest.fixture(params=[(3, 1), (3, 2), (3, 3)], ids=lambda p: f"ell{p[0]}-m{p[1]}")
def small_grid(request):
    return new_grid(*request.param)
