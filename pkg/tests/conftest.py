import random

import pytest

from finex.demo import EPSILON, MIN_PTS, demo_dataset
from finex.neighbors import build_provider
from finex.build import finex_build
from finex.baseline import optics_build


@pytest.fixture(scope="session")
def demo():
    dataset, params = demo_dataset()
    provider = build_provider(dataset, params.epsilon)
    return dataset, params, provider


@pytest.fixture(scope="session")
def demo_index(demo):
    dataset, params, provider = demo
    return finex_build(provider, params.epsilon, params.min_pts)


@pytest.fixture(scope="session")
def demo_optics(demo):
    dataset, params, provider = demo
    return optics_build(provider, params.epsilon, params.min_pts)


@pytest.fixture()
def rng():
    return random.Random(20240817)
