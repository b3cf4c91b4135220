import pytest

from hyperops.complexes import standard_fixtures


@pytest.fixture(scope="session")
def fixtures():
    return standard_fixtures()


@pytest.fixture(scope="session")
def delta1(fixtures):
    return fixtures["delta1"]


@pytest.fixture(scope="session")
def delta2(fixtures):
    return fixtures["delta2"]


@pytest.fixture(scope="session")
def p3(fixtures):
    return fixtures["p3"]


@pytest.fixture(scope="session")
def sk1d3(fixtures):
    return fixtures["sk1d3"]
