import math

import numpy as np
import pytest

from wyskew import quantum

SQRT_HALF = 1 / math.sqrt(2)


def fig2_bloch(theta: float) -> list[float]:
    return [0.5 * math.cos(theta), 0.5 * math.sin(theta), 0.5]


@pytest.fixture
def fig2_state():
    return quantum.density_from_bloch(fig2_bloch(math.pi / 4))


@pytest.fixture
def rng():
    return np.random.default_rng(20231017)


def random_matrix(rng, d):
    return rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))
