import pytest

from mvspoly.gf import make_field


@pytest.fixture(scope="session")
def f4():
    return make_field(2, 1, 2)


@pytest.fixture(scope="session")
def f8():
    return make_field(2, 1, 3)


@pytest.fixture(scope="session")
def f9():
    return make_field(3, 1, 2)


@pytest.fixture(scope="session")
def f64():
    return make_field(2, 1, 6)


@pytest.fixture(scope="session")
def f729():
    return make_field(3, 1, 6)
