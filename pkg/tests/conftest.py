import numpy as np
import pytest


@pytest.fixture
def rng():
    """Deterministic generator; a fresh stream per test."""
    return np.random.Generator(np.random.Philox(key=20260808))
