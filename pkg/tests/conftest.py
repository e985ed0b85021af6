import pytest

from beltedfal.census import enumerate_painted_crushtaceans
from beltedfal.fixtures import load


@pytest.fixture(scope="session")
def census_by_c():
    return {c: enumerate_painted_crushtaceans(c) for c in range(2, 7)}


@pytest.fixture(scope="session")
def census_upto6(census_by_c):
    return [g for c in sorted(census_by_c) for g in census_by_c[c]]


@pytest.fixture(scope="session")
def census_upto5(census_by_c):
    return [g for c in range(2, 6) for g in census_by_c[c]]


@pytest.fixture
def fx():
    return load
