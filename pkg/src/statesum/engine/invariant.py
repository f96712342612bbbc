"""
The state sum I = K^-v * sum_l Z(M, T, l) * prod_e dim_q(l(e))^-1 * prod_f dim_q(l(f)).

``invariant`` evaluates it from tabulated data by contracting one tensor network per labelling. For 2Hilb[G] the
network is a product of phases, and ``invariant_group_fast`` sums them directly as a histogram of exponents.
``invariants_group_fast`` scores several cocycles against one pass over numpy blocks of flat colourings.
"""

import operator
from collections.abc import Iterator, Sequence
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, partial

import numpy as np

from ..algebra.cocycle import FourCochain, require_cocycle
from ..algebra.cyclotomic import Cyclotomic
from ..algebra.groups import FiniteGroup
from ..category.catdata import SphericalData, from_group_cocycle
from ..core.config import EngineOption, settings
from ..core.exceptions.complex_exceptions import DisconnectedComplexError, NotClosedError
from ..core.exceptions.engine_exceptions import ZeroDimensionError
from ..core.logger import logging
from ..core.utils.parallel import map_reduce
from ..topology.complex import OrientedTriangulation, Simplex, validate
from .labelling import EdgeSearch, enumerate_labellings
from .oracle import oracle_invariant
from .tensors import contract_network, labelling_weight

logger = logging.getLogger(__name__)

BLOCK_ROWS = 1 << 16
PACK_BITS = 62


@dataclass(frozen=True)
class FlatnessTables:
    """Triangle completions for flat colourings: l(ij) * l(jk) = l(ik)."""

    group: FiniteGroup

    @property
    def objects(self) -> range:
        return range(self.group.order)

    def completions(self, slot: int, x: int, y: int) -> frozenset[int]:
        g = self.group
        if slot == 0:
            return frozenset((g.mul(y, g.inv(x)),))
        if slot == 1:
            return frozenset((g.mul(g.inv(x), y),))
        return frozenset((g.mul(x, y),))

    @cached_property
    def _inverse(self) -> np.ndarray:
        return np.array(self.group.inverse, dtype=np.int64)

    def complete(self, slot: int, x: np.ndarray, y: np.ndarray) -> np.ndarray:
        """Vectorised ``completions``: the forced third label for arrays of the other two."""
        t, inv = self.group.array, self._inverse
        if slot == 0:
            return t[y, inv[x]]
        if slot == 1:
            return t[inv[x], y]
        return t[x, y]


def require_evaluable(T: OrientedTriangulation) -> None:
    report = validate(T.base)
    if not report.is_closed_pseudomanifold:
        raise NotClosedError()
    if not report.is_connected:
        raise DisconnectedComplexError("The state sum is defined for connected complexes only")


# -------------- generic engine --------------
def _generic_partial(T: OrientedTriangulation, data: SphericalData, first: int) -> Cyclotomic:
    total = Cyclotomic.zero(data.N)
    count = 0
    for labelling in enumerate_labellings(T.base, data, prefix=(first,)):
        total = total + labelling_weight(T, labelling, data) * contract_network(T, labelling, data)
        count += 1
    logger.debug(f"First edge label {first}: {count} labellings")
    return total


def invariant(T: OrientedTriangulation, data: SphericalData, workers: int | None = None) -> Cyclotomic:
    require_evaluable(T)
    if not data.objects:
        raise ZeroDimensionError()
    chunks = EdgeSearch.for_complex(T.base, data).first_choices()
    total = map_reduce(
        partial(_generic_partial, T, data),
        chunks,
        operator.add,
        Cyclotomic.zero(data.N),
        workers=settings.WORKERS if workers is None else workers,
    )
    value = total * data.K ** (-T.vertex_count)
    logger.info(f"Invariant from {data.name} on {T.vertex_count} vertices: {value}")
    return value


# -------------- group fast path --------------
def flat_colouring_blocks(
    search: EdgeSearch, tables: FlatnessTables, prefix: Sequence[int] = (), block_rows: int = BLOCK_ROWS
) -> Iterator[np.ndarray]:
    """Every flat colouring, grown one edge of the search order at a time.

    Each block has shape (edges, colourings) and holds at most ``block_rows`` colourings. An edge that closes a
    triangle has its label forced by the group law, so only edges closing no triangle widen the frontier; a frontier
    that would grow past ``block_rows`` is split by the label of that edge and finished depth-first.
    """
    n = len(search.edges)
    order = tables.group.order
    assigned = list(prefix) + [0] * (n - len(prefix))
    for depth in range(len(prefix)):
        if assigned[depth] not in search.candidates(depth, assigned):
            return
    dtype = np.min_scalar_type(order - 1)
    labels = np.arange(order, dtype=dtype)
    start = np.zeros((n, 1), dtype=dtype)
    start[: len(prefix), 0] = prefix
    stack: list[tuple[np.ndarray, int, int | None]] = [(start, len(prefix), None)]
    while stack:
        front, depth, label = stack.pop()
        if label is not None:
            front = front.copy()
            front[depth] = label
            depth += 1
        while depth < n and front.shape[1]:
            closing = search.closing[depth]
            if not closing:
                width = front.shape[1]
                if width * order > block_rows:
                    stack.extend((front, depth, choice) for choice in range(order - 1, -1, -1))
                    break
                front = np.repeat(front, order, axis=1)
                front[depth] = np.tile(labels, width)
            else:
                slot, a, b = closing[0]
                forced = tables.complete(slot, front[a], front[b])
                keep = np.ones(front.shape[1], dtype=bool)
                for slot, a, b in closing[1:]:
                    keep &= tables.complete(slot, front[a], front[b]) == forced
                if not keep.all():
                    front = front[:, keep]
                    forced = forced[keep]
                front[depth] = forced
            depth += 1
        else:
            if front.shape[1]:
                yield front


def _phase_arguments(T: OrientedTriangulation, edges: list[Simplex]) -> np.ndarray:
    """Per facet, the search positions of its path edges (v0 v1), (v1 v2), (v2 v3), (v3 v4)."""
    position = {e: d for d, e in enumerate(edges)}
    return np.array([[position[(f[i], f[i + 1])] for i in range(4)] for f in T.facets], dtype=np.int64)


def _phase_index(block: np.ndarray, args: np.ndarray, order: int) -> np.ndarray:
    """Position of pi(l01, l12, l23, l34) in a flattened dense cochain, shape (facets, colourings)."""
    index = block[args[:, 0]].astype(np.int64)
    for k in range(1, 4):
        index *= order
        index += block[args[:, k]]
    return index


@dataclass(frozen=True, eq=False)
class PhasePack:
    """Phase tables of several cocycles packed into one int64 table, one bit field per cocycle.

    A signed sum of packed entries over at most ``facets`` facets sums every field at once; adding ``base`` shifts
    each field into its non-negative range before it is read back.
    """

    members: tuple[int, ...]
    moduli: tuple[int, ...]
    shifts: tuple[int, ...]
    widths: tuple[int, ...]
    offsets: tuple[int, ...]
    table: np.ndarray

    @property
    def base(self) -> int:
        return sum(offset << shift for offset, shift in zip(self.offsets, self.shifts, strict=True))

    def exponents(self, packed: np.ndarray) -> Iterator[tuple[int, np.ndarray]]:
        """Per member, the exponent of z for every colouring."""
        total = packed + self.base
        fields = zip(self.members, self.moduli, self.shifts, self.widths, self.offsets, strict=True)
        for member, N, shift, width, offset in fields:
            value = (total >> shift) & ((1 << width) - 1)
            yield member, (value - offset) % N


def phase_packs(cocycles: Sequence[FourCochain], facets: int) -> list[PhasePack]:
    """Pack the cocycles with non-zero entries, as many per table as fit in ``PACK_BITS``."""
    groups: list[list[tuple[int, int]]] = []
    used = PACK_BITS
    for member, pi in enumerate(cocycles):
        if not pi.entries:
            continue
        width = (2 * facets * (pi.N - 1)).bit_length()
        if used + width > PACK_BITS:
            groups.append([])
            used = 0
        groups[-1].append((member, width))
        used += width

    packs = []
    for fields in groups:
        table = np.zeros(cocycles[fields[0][0]].dense.size, dtype=np.int64)
        shifts = []
        shift = 0
        for member, width in fields:
            pi = cocycles[member]
            table += (pi.dense.ravel() % pi.N) << shift
            shifts.append(shift)
            shift += width
        packs.append(
            PhasePack(
                members=tuple(m for m, _ in fields),
                moduli=tuple(cocycles[m].N for m, _ in fields),
                shifts=tuple(shifts),
                widths=tuple(w for _, w in fields),
                offsets=tuple(facets * (cocycles[m].N - 1) for m, _ in fields),
                table=table,
            )
        )
    return packs


Histograms = tuple[tuple[int, ...], ...]


def _fast_histograms(
    T: OrientedTriangulation, group: FiniteGroup, cocycles: tuple[FourCochain, ...], first: int
) -> Histograms:
    tables = FlatnessTables(group)
    search = EdgeSearch.for_complex(T.base, tables)
    args = _phase_arguments(T, search.edges)
    epsilon = np.array(T.epsilon, dtype=np.int64)
    packs = phase_packs(cocycles, len(T.facets))
    untwisted = [member for member, pi in enumerate(cocycles) if not pi.entries]
    counts = [np.zeros(pi.N, dtype=np.int64) for pi in cocycles]
    for block in flat_colouring_blocks(search, tables, (first,)):
        for member in untwisted:
            counts[member][0] += block.shape[1]
        if not packs:
            continue
        index = _phase_index(block, args, group.order)
        for pack in packs:
            for member, exponents in pack.exponents(epsilon @ pack.table[index]):
                counts[member] += np.bincount(exponents, minlength=cocycles[member].N)
    return tuple(tuple(int(c) for c in tally) for tally in counts)


def _add_histograms(left: Histograms, right: Histograms) -> Histograms:
    return tuple(tuple(a + b for a, b in zip(x, y, strict=True)) for x, y in zip(left, right, strict=True))


def invariants_group_fast(
    T: OrientedTriangulation, group: FiniteGroup, cocycles: Sequence[FourCochain], workers: int | None = None
) -> list[Cyclotomic]:
    """The fast-path invariant for several cocycles from a single pass over the flat colourings."""
    require_evaluable(T)
    for pi in cocycles:
        require_cocycle(pi)
    if not cocycles:
        return []
    chunks = EdgeSearch.for_complex(T.base, FlatnessTables(group)).first_choices()
    histograms = map_reduce(
        partial(_fast_histograms, T, group, tuple(cocycles)),
        chunks,
        _add_histograms,
        tuple((0,) * pi.N for pi in cocycles),
        workers=settings.WORKERS if workers is None else workers,
    )
    scale = group.order**T.vertex_count
    values = [
        Cyclotomic.from_power_counts(pi.N, [Fraction(c, scale) for c in counts])
        for pi, counts in zip(cocycles, histograms, strict=True)
    ]
    logger.info(f"{len(values)} invariants for {group.name} over {sum(histograms[0])} flat colourings")
    return values


def invariant_group_fast(
    T: OrientedTriangulation, group: FiniteGroup, pi: FourCochain, workers: int | None = None
) -> Cyclotomic:
    """|G|^-v * sum over flat colourings of prod_facets z^(eps * pi(l(01), l(12), l(23), l(34)))."""
    return invariants_group_fast(T, group, [pi], workers=workers)[0]


def per_labelling_phases(
    T: OrientedTriangulation, group: FiniteGroup, pi: FourCochain
) -> Iterator[tuple[dict[Simplex, int], int]]:
    """Each flat colouring with the exponent of its network value z^e."""
    search = EdgeSearch.for_complex(T.base, FlatnessTables(group))
    paths = [tuple((f[i], f[i + 1]) for i in range(4)) for f in T.facets]
    for colouring in search.colourings():
        labels = dict(zip(search.edges, colouring, strict=True))
        exponent = sum(
            eps * pi.value(*(labels[e] for e in path)) for eps, path in zip(T.epsilon, paths, strict=True)
        )
        yield labels, exponent % pi.N


def evaluate(
    T: OrientedTriangulation,
    group: FiniteGroup,
    pi: FourCochain,
    engine: EngineOption | str | None = None,
    workers: int | None = None,
    budget: int | None = None,
) -> Cyclotomic:
    """Group invariant through the selected engine."""
    choice = EngineOption(engine) if engine is not None else settings.DEFAULT_ENGINE
    if choice is EngineOption.FAST:
        return invariant_group_fast(T, group, pi, workers=workers)
    if choice is EngineOption.GENERIC:
        return invariant(T, from_group_cocycle(group, pi), workers=workers)
    return oracle_invariant(T, group, pi, budget=budget)
