import numpy as np
import pytest

from nlss import DomainSpec, build_grid, get_spectrum

PI = np.pi


@pytest.fixture(scope="session")
def g32():
    return build_grid(DomainSpec("interval", (PI,), 32))


@pytest.fixture(scope="session")
def g64():
    return build_grid(DomainSpec("interval", (PI,), 64))


@pytest.fixture(scope="session")
def s32(g32):
    return get_spectrum(g32)


@pytest.fixture(scope="session")
def s64(g64):
    return get_spectrum(g64)


@pytest.fixture(scope="session")
def g2d():
    return build_grid(DomainSpec("rectangle", (PI, PI), 11))


@pytest.fixture(scope="session")
def s2d(g2d):
    return get_spectrum(g2d)


def rng(seed=0):
    return np.random.default_rng(seed)
