import numpy as np
import pytest

from becmemory.config import RunConfig


@pytest.fixture
def cfg() -> RunConfig:
    return RunConfig.from_mapping({})


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(20120731)


def random_physical_stokes(rng, n):
    """Seeded sample of valid Stokes vectors, including partially polarized."""
    s0 = rng.uniform(0.1, 3.0, n)
    direction = rng.normal(size=(n, 3))
    direction /= np.linalg.norm(direction, axis=1, keepdims=True)
    dop = rng.uniform(0.0, 1.0, n)
    vec = direction * (dop * s0)[:, None]
    return np.column_stack([s0, vec])
