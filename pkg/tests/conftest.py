import numpy as np
import pytest
from hypothesis import settings

from kmsflow import catalog

settings.register_profile("default", max_examples=40, deadline=None)
settings.load_profile("default")


@pytest.fixture
def rng():
    return np.random.Generator(np.random.PCG64(12345))


@pytest.fixture(scope="session")
def pascal8():
    return catalog.pascal_flow(8)


@pytest.fixture(scope="session")
def young8():
    return catalog.young_flow(8)


def V(g, n, label):
    return g.vertex(n, label)
