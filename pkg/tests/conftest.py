import numpy as np
import pytest

from tvbounds import data
from tvbounds.stochastics import NoiseStream


@pytest.fixture
def stream():
    return NoiseStream(20260809)


@pytest.fixture(scope="session")
def trees():
    """(J, y_bar, S) of the embedded girth sample."""
    return data.location_stats(data.builtin_dataset("trees-girth"))


@pytest.fixture
def rng():
    return np.random.default_rng(991)
