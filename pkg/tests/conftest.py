import random

import pytest

from thompson_homfly.signs import enumerate_oriented


@pytest.fixture(scope="session")
def oriented6():
    return enumerate_oriented(6)


@pytest.fixture
def rng():
    return random.Random(12345)
