import functools

import pytest

from rsmult.characters import enumerate_real_primitive, kronecker_character


@functools.lru_cache(maxsize=None)
def _chars(q_max):
    return tuple(enumerate_real_primitive(q_max))


@pytest.fixture(scope="session")
def chars499():
    return _chars(499)


@pytest.fixture(scope="session")
def chars100():
    return _chars(100)


@pytest.fixture(scope="session")
def chi3():
    return kronecker_character(-3)


@pytest.fixture(scope="session")
def chi4():
    return kronecker_character(-4)
