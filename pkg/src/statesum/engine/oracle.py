"""Brute-force group invariant: every edge colouring, no pruning, shared code kept to a minimum."""

from collections.abc import Iterator
from fractions import Fraction
from itertools import product

from ..algebra.cocycle import FourCochain
from ..algebra.cyclotomic import Cyclotomic
from ..algebra.groups import FiniteGroup
from ..core.config import settings
from ..core.exceptions.complex_exceptions import DisconnectedComplexError, NotClosedError
from ..core.exceptions.engine_exceptions import BudgetExceededError
from ..core.logger import logging
from ..topology.complex import OrientedTriangulation, Simplex, validate

logger = logging.getLogger(__name__)


def flat_colourings(T: OrientedTriangulation, group: FiniteGroup, budget: int | None = None) -> Iterator[dict]:
    limit = settings.ORACLE_BUDGET if budget is None else budget
    edges = T.base.edges
    space = group.order ** len(edges)
    if space > limit:
        raise BudgetExceededError(f"{group.order}^{len(edges)} = {space} edge colourings exceed the budget {limit}")
    triangles = T.base.triangles
    for colours in product(range(group.order), repeat=len(edges)):
        colouring: dict[Simplex, int] = dict(zip(edges, colours, strict=True))
        if all(group.mul(colouring[(i, j)], colouring[(j, k)]) == colouring[(i, k)] for i, j, k in triangles):
            yield colouring


def oracle_invariant(
    T: OrientedTriangulation, group: FiniteGroup, pi: FourCochain, budget: int | None = None
) -> Cyclotomic:
    report = validate(T.base)
    if not report.is_closed_pseudomanifold:
        raise NotClosedError()
    if not report.is_connected:
        raise DisconnectedComplexError("The state sum is defined for connected complexes only")

    counts = [0] * pi.N
    flat = 0
    for colouring in flat_colourings(T, group, budget=budget):
        exponent = 0
        for (v0, v1, v2, v3, v4), eps in zip(T.facets, T.epsilon, strict=True):
            path = (colouring[(v0, v1)], colouring[(v1, v2)], colouring[(v2, v3)], colouring[(v3, v4)])
            exponent += eps * pi.value(*path)
        counts[exponent % pi.N] += 1
        flat += 1
    scale = group.order**T.vertex_count
    value = Cyclotomic.from_power_counts(pi.N, [Fraction(c, scale) for c in counts])
    logger.info(f"Oracle: {flat} flat colourings, invariant {value}")
    return value
