import numpy as np
import pytest

from pdcshape import DEFAULT_PARAMS, CosinePhaseFilter, characteristic_time


@pytest.fixture(scope="session")
def params():
    return DEFAULT_PARAMS


@pytest.fixture(scope="session")
def T(params):
    return characteristic_time(params)


@pytest.fixture
def no_filter():
    return CosinePhaseFilter(0.0, 0.0)


@pytest.fixture
def standard_filter():
    return CosinePhaseFilter(2.0, 50.0)


def uniform_grid(halfwidth: float, step: float) -> np.ndarray:
    n = int(round(halfwidth / step))
    return np.arange(-n, n + 1) * step
