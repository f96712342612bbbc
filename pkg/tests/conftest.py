import pytest
from faker import Faker

from src.statesum.algebra.groups import FiniteGroup, cyclic_group, symmetric_group
from src.statesum.topology.complex import OrientedTriangulation, boundary_5simplex

fake = Faker()
Faker.seed(20240607)


@pytest.fixture
def sphere() -> OrientedTriangulation:
    """The boundary of the 5-simplex with its standard orientation."""
    return boundary_5simplex()


@pytest.fixture
def z2() -> FiniteGroup:
    return cyclic_group(2)


@pytest.fixture
def z3() -> FiniteGroup:
    return cyclic_group(3)


@pytest.fixture
def s3() -> FiniteGroup:
    return symmetric_group(3)


@pytest.fixture
def seed() -> int:
    """A reproducible seed drawn from the seeded faker."""
    return fake.random_int(min=0, max=10_000)
