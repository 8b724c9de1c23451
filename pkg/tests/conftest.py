import numpy as np
import pytest

from einkernel.forms import form21


@pytest.fixture
def rng():
    return np.random.default_rng(20240817)


def random_spacelike(rng, scale=1.0, margin=0.05):
    """Random spacelike 3-vector with a definiteness margin."""
    while True:
        u = rng.normal(size=3) * scale
        if form21(u, u) > margin:
            return u


def random_timelike(rng, scale=1.0, margin=0.05):
    while True:
        v = rng.normal(size=3) * scale
        if form21(v, v) < -margin:
            return v
