import pytest

from northcott.dsl import parse_ideal
from northcott.staircase import Ring


@pytest.fixture
def R2():
    return Ring(2)


@pytest.fixture
def R3():
    return Ring(3)


@pytest.fixture
def stair(R2):
    return parse_ideal("x^3,x^2y^4,xy^5,y^7", R2)


@pytest.fixture
def m2(R2):
    return parse_ideal("x,y", R2)
