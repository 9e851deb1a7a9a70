import numpy as np
import pytest

from gaborlab import SampleGrid, Signal, WindowSpec, sample_window

DEFAULT_GRID = SampleGrid(1024, 1 / 32)
WIDE_GRID = SampleGrid(2048, 1 / 32)  # T = 64, fits the slow-decay windows


@pytest.fixture(scope="session")
def grid():
    return DEFAULT_GRID


@pytest.fixture(scope="session")
def wide_grid():
    return WIDE_GRID


@pytest.fixture(scope="session")
def gaussian(grid):
    return sample_window(WindowSpec("gaussian"), grid)


@pytest.fixture(scope="session")
def unit_gaussian(gaussian):
    return gaussian.unit()


@pytest.fixture()
def rng():
    return np.random.default_rng(0)


def random_signal(grid, rng, complex_values=True):
    v = rng.normal(size=grid.L)
    if complex_values:
        v = v + 1j * rng.normal(size=grid.L)
    return Signal(grid, v)
