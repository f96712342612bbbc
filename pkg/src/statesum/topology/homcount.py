"""Edge-path presentations of the fundamental group and brute-force homomorphism counts."""

import networkx as nx

from ..algebra.groups import FiniteGroup
from ..core.config import settings
from ..core.exceptions.complex_exceptions import DisconnectedComplexError
from ..core.exceptions.engine_exceptions import BudgetExceededError
from ..core.logger import logging
from ..schemas.homcount import GroupPresentation, Letter
from .complex import Triangulation4

logger = logging.getLogger(__name__)


def presentation(T: Triangulation4) -> GroupPresentation:
    """Generators are the edges off a breadth-first spanning tree from vertex 0; each triangle (i<j<k) gives the
    relator (ij)(jk)(ik)^-1 with tree edges read as the empty word."""
    if T.vertex_count == 0 or not nx.is_connected(T.skeleton):
        raise DisconnectedComplexError("A presentation needs a connected complex")
    tree = {tuple(sorted(e)) for e in nx.bfs_edges(T.skeleton, 0)}
    generators = [e for e in T.edges if e not in tree]
    index = {e: g for g, e in enumerate(generators)}

    relators = []
    for i, j, k in T.triangles:
        word: list[Letter] = []
        for edge, power in (((i, j), 1), ((j, k), 1), ((i, k), -1)):
            if edge in index:
                word.append((index[edge], power))
        if word:
            relators.append(tuple(word))
    logger.debug(f"Presentation with {len(generators)} generators and {len(relators)} relators")
    return GroupPresentation(
        generator_count=len(generators), relators=tuple(relators), generator_edges=tuple(generators)
    )


def count_homs(P: GroupPresentation, group: FiniteGroup, budget: int | None = None) -> int:
    """Count assignments of group elements to generators that kill every relator.

    Generators are assigned in order and each relator is evaluated as soon as its last generator is set. The budget
    bounds the number of partial assignments visited.
    """
    limit = settings.HOM_BUDGET if budget is None else budget
    n = P.generator_count
    due: list[list[tuple[Letter, ...]]] = [[] for _ in range(n)]
    for word in P.relators:
        due[max(g for g, _ in word)].append(word)

    def holds(word: tuple[Letter, ...], values: list[int]) -> bool:
        element = 0
        for generator, power in word:
            x = values[generator]
            element = group.mul(element, x if power > 0 else group.inv(x))
        return element == 0

    if n == 0:
        return 1
    values = [0] * n
    count = 0
    visited = 0
    stack = [iter(range(group.order))]
    while stack:
        depth = len(stack) - 1
        x = next(stack[-1], None)
        if x is None:
            stack.pop()
            continue
        visited += 1
        if visited > limit:
            raise BudgetExceededError(f"Homomorphism search visited more than {limit} partial assignments")
        values[depth] = x
        if not all(holds(word, values) for word in due[depth]):
            continue
        if depth + 1 == n:
            count += 1
        else:
            stack.append(iter(range(group.order)))
    logger.info(f"{count} homomorphisms into {group.name} ({visited} partial assignments)")
    return count
