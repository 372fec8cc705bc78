import pytest

from symspace import build_space_spec


@pytest.fixture(scope="session")
def sl3():
    return build_space_spec("sl_R:3")


@pytest.fixture(scope="session")
def sl4():
    return build_space_spec("sl_R:4")


@pytest.fixture(scope="session")
def so23():
    return build_space_spec("so:2,3")


@pytest.fixture(scope="session")
def so14():
    return build_space_spec("so:1,4")


@pytest.fixture(scope="session")
def g2():
    return build_space_spec("g2_split")


# p-coordinates of diag(1,1,-2) in sl_R:3 (the most singular direction)
VERONESE_SL3 = [0, 0, 0, 1, 2]
