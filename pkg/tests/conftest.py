import pytest

from stringalg.fixtures import fixture_names, load_fixture


@pytest.fixture(scope="session")
def corpus():
    return {name: load_fixture(name) for name in fixture_names()}


@pytest.fixture(scope="session")
def lambda1(corpus):
    return corpus["lambda1"]


@pytest.fixture(scope="session")
def lambda2(corpus):
    return corpus["lambda2"]


@pytest.fixture(scope="session")
def lambda3(corpus):
    return corpus["lambda3"]


@pytest.fixture(scope="session")
def lambda4(corpus):
    return corpus["lambda4"]


@pytest.fixture(scope="session")
def loops_barbell(corpus):
    return corpus["loops_barbell"]


@pytest.fixture(scope="session")
def windwheel(corpus):
    return corpus["windwheel_a12"]


@pytest.fixture(scope="session")
def big_gentle(corpus):
    return corpus["big_gentle"]
