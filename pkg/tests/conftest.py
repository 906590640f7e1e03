import numpy as np
import pytest
from hypothesis import settings

from algaslab.spectral import ReflectionCoefficient, SpectralBand

settings.register_profile("default", max_examples=40, deadline=None)
settings.load_profile("default")


@pytest.fixture
def band():
    return SpectralBand(1.3, 1.8)


@pytest.fixture
def wide_band():
    return SpectralBand(1.5, 2.5)


@pytest.fixture
def unit_r():
    return ReflectionCoefficient()


@pytest.fixture
def rng():
    return np.random.default_rng(1234)
