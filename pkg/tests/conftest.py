import pytest

from replika.algebra import hereditary_algebra, replicated_algebra
from replika.linalg import DEFAULT_PRIME, PrimeField
from replika.quiver import linear_a, subspace_d4


@pytest.fixture(scope="session")
def field():
    return PrimeField(DEFAULT_PRIME)


@pytest.fixture(scope="session")
def a3():
    return linear_a(3)


@pytest.fixture(scope="session")
def d4():
    return subspace_d4()


@pytest.fixture(scope="session")
def a3_alg0(a3):
    return hereditary_algebra(a3)


@pytest.fixture(scope="session")
def a3_alg1(a3):
    return replicated_algebra(a3, 1)


@pytest.fixture(scope="session")
def a3_alg2(a3):
    return replicated_algebra(a3, 2)
