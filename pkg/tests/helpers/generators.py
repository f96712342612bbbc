from fractions import Fraction

from src.statesum.algebra.cocycle import FourCochain, coboundary, random_three_cochain
from src.statesum.algebra.cyclotomic import Cyclotomic
from src.statesum.algebra.groups import FiniteGroup
from src.statesum.topology.complex import Triangulation4
from tests.conftest import fake


def random_cyclotomic(N: int, nonzero: bool = False) -> Cyclotomic:
    while True:
        coeffs = [Fraction(fake.random_int(min=-9, max=9), fake.random_int(min=1, max=7)) for _ in range(N)]
        value = Cyclotomic.from_power_counts(N, coeffs)
        if not nonzero or not value.is_zero():
            return value


def random_permutation(n: int) -> list[int]:
    perm = list(range(n))
    fake.random.shuffle(perm)
    return perm


def random_coboundary(group: FiniteGroup, N: int | None = None) -> FourCochain:
    modulus = N if N is not None else fake.random_int(min=2, max=6)
    return coboundary(random_three_cochain(group, modulus, seed=fake.random_int(min=0, max=10_000)))


def two_spheres() -> Triangulation4:
    """Two disjoint copies of the boundary of the 5-simplex."""
    first = [tuple(v for v in range(6) if v != i) for i in range(6)]
    second = [tuple(v + 6 for v in f) for f in first]
    return Triangulation4(vertex_count=12, facets=tuple(first + second))
