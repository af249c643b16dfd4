import pytest

from concatcode import get_code


@pytest.fixture(scope="session")
def bitflip3():
    return get_code("bitflip3")


@pytest.fixture(scope="session")
def five_qubit():
    return get_code("five-qubit")


@pytest.fixture(scope="session")
def steane():
    return get_code("steane")


@pytest.fixture(scope="session")
def shor():
    return get_code("shor")
