import pytest

from modsym import NumericsConfig, build_level_data


@pytest.fixture(scope="session")
def level1():
    return build_level_data(1)


@pytest.fixture(scope="session")
def level2():
    return build_level_data(2)


@pytest.fixture(scope="session")
def level11():
    return build_level_data(11)


@pytest.fixture(scope="session")
def cfg():
    return NumericsConfig()
