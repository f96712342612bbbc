"""
Exact consistency checks on tabulated data.

The four checks are the identities the invariance of the state sum consumes:

* ``dimension-sum``: for every simple A, K = sum over (C, B, f) of dim(A)^-1 dim(B)^-1 dim(C)^-1 dim(f)^2, with f
  running over the labels of the triangle key (C, B, A);
* ``tetrahedron``: on a tetrahedron (0123) with the triangles 013 and 123 fixed, summing the 2Hom dimension over
  e02, f012, f023 with weight dim(e02)^-1 dim(f012) dim(f023) gives dim(e13)^-1 dim(f013) dim(f123);
* ``orthogonality``: the two weighted composites of Z(+(01234)) and Z(-(01234)) are identity maps;
* ``hexagon``: on the boundary of the 5-simplex, the three facets around triangle 024 and the three around 135 give
  the same map between the nine boundary tetrahedra once the interior triangle is summed.
"""

from collections.abc import Callable, Iterable, Iterator
from dataclasses import dataclass, field
from itertools import islice, product
from math import prod
from random import Random
from typing import TypeVar

import numpy as np

from ..algebra.cyclotomic import Cyclotomic
from ..core.config import settings
from ..core.exceptions.base import StateSumError
from ..core.logger import logging
from ..engine.labelling import EdgeSearch, Labelling, face_choices, spanning_edge_order
from ..engine.network import contract
from ..engine.tensors import simplex_key
from ..schemas.data import CheckOutcome, VerificationReport
from ..topology.complex import OrientedTriangulation, Simplex, boundary_5simplex, faces, omit
from .catdata import EDGE_POSITION, SIMPLEX_EDGES, SIMPLEX_TRIANGLES, SLOT_ORDER, TRIANGLE_POSITION, SphericalData

logger = logging.getLogger(__name__)

MAX_REPORTED = 20

X = TypeVar("X")


@dataclass
class _Tally:
    name: str
    checked: int = 0
    failed: int = 0
    vacuous: int = 0
    exhaustive: bool = True
    messages: list[str] = field(default_factory=list)

    def fail(self, message: str) -> None:
        self.failed += 1
        if len(self.messages) < MAX_REPORTED:
            self.messages.append(f"{self.name}: {message}")

    def outcome(self) -> CheckOutcome:
        return CheckOutcome(
            name=self.name,
            checked=self.checked,
            failures=self.failed,
            vacuous=self.vacuous,
            exhaustive=self.exhaustive,
        )


def _select(space: Iterator[X], sampler: Callable[[], X | None], limit: int, samples: int) -> tuple[list[X], bool]:
    """The whole space when it has at most ``limit`` members, else ``samples`` random draws."""
    head = list(islice(space, limit + 1))
    if len(head) <= limit:
        return head, True
    drawn = [x for _ in range(samples) if (x := sampler()) is not None]
    return drawn, False


def _is_identity(matrix: np.ndarray) -> bool:
    n = matrix.shape[0]
    return all(matrix[i, j] == (1 if i == j else 0) for i in range(n) for j in range(n))


# -------------- dimension sum --------------
def dimension_sum(data: SphericalData, A: int) -> Cyclotomic:
    total = Cyclotomic.zero(data.N)
    for (c, b, a), labels in data.triangle_labels.items():
        if a != A:
            continue
        for label in labels:
            total = total + data.dim_inverse(A) * data.dim_inverse(b) * data.dim_inverse(c) * label.dim * label.dim
    return total


def _check_dimension_sums(data: SphericalData) -> _Tally:
    tally = _Tally("dimension-sum")
    for A in range(len(data.objects)):
        tally.checked += 1
        value = dimension_sum(data, A)
        if value != data.K:
            tally.fail(f"A={A}: sum is {value}, K is {data.K}")
    return tally


# -------------- tetrahedron --------------
_TETRA_EDGES = [(0, 1), (1, 3), (0, 3), (1, 2), (2, 3)]
_TETRA_TRIANGLES = [(0, 1, 3), (1, 2, 3)]


def _check_tetrahedra(data: SphericalData, rng: Random, limit: int, samples: int) -> _Tally:
    tally = _Tally("tetrahedron")
    search = EdgeSearch(_TETRA_EDGES, _TETRA_TRIANGLES, data)

    def configurations(colouring: tuple[int, ...]) -> Iterator[tuple[int, ...]]:
        e01, e13, e03, e12, e23 = colouring
        for f013, f123 in product(range(len(data.labels(e01, e13, e03))), range(len(data.labels(e12, e23, e13)))):
            yield e01, e03, e12, e13, e23, f013, f123

    def sampler() -> tuple[int, ...] | None:
        colouring = search.sample(rng)
        if colouring is None:
            return None
        return rng.choice(list(configurations(colouring)))

    space = (config for colouring in search.colourings() for config in configurations(colouring))
    instances, tally.exhaustive = _select(space, sampler, limit, samples)
    for e01, e03, e12, e13, e23, f013, f123 in instances:
        tally.checked += 1
        lhs = Cyclotomic.zero(data.N)
        for e02 in range(len(data.objects)):
            for f012, left in enumerate(data.labels(e01, e12, e02)):
                for f023, right in enumerate(data.labels(e02, e23, e03)):
                    dim2 = data.twohom((e01, e02, e03, e12, e13, e23, f012, f013, f023, f123))
                    if dim2:
                        lhs = lhs + data.dim_inverse(e02) * left.dim * right.dim * dim2
        rhs = data.dim_inverse(e13) * data.face_dim((e01, e13, e03), f013) * data.face_dim((e12, e23, e13), f123)
        if lhs != rhs:
            labels = f"e01={e01} e03={e03} e12={e12} e13={e13} e23={e23} f013={f013} f123={f123}"
            tally.fail(f"{labels}: {lhs} != {rhs}")
    return tally


# -------------- orthogonality --------------
_E13 = EDGE_POSITION[(1, 3)]
_F = {t: 10 + p for t, p in TRIANGLE_POSITION.items()}


def _simplex_keys(data: SphericalData, search: EdgeSearch) -> Iterator[tuple[int, ...]]:
    for colouring in search.colourings():
        edge_labels = dict(zip(SIMPLEX_EDGES, colouring, strict=True))
        for choice in product(*face_choices(data, SIMPLEX_TRIANGLES, edge_labels)):
            yield (*colouring, *choice)


def _sample_simplex_key(data: SphericalData, search: EdgeSearch, rng: Random) -> tuple[int, ...] | None:
    colouring = search.sample(rng)
    if colouring is None:
        return None
    edge_labels = dict(zip(SIMPLEX_EDGES, colouring, strict=True))
    return (*colouring, *(rng.choice(r) for r in face_choices(data, SIMPLEX_TRIANGLES, edge_labels)))


def _triangle_labels(data: SphericalData, key: list[int], triangle: Simplex) -> range:
    i, j, k = triangle
    return range(len(data.labels(key[EDGE_POSITION[(i, j)]], key[EDGE_POSITION[(j, k)]], key[EDGE_POSITION[(i, k)]])))


def _face_dim(data: SphericalData, key: list[int] | tuple[int, ...], triangle: Simplex) -> Cyclotomic:
    i, j, k = triangle
    edges = (key[EDGE_POSITION[(i, j)]], key[EDGE_POSITION[(j, k)]], key[EDGE_POSITION[(i, k)]])
    return data.face_dim(edges, key[_F[triangle]])


def _in_composite(data: SphericalData, fixed: tuple[int, ...]) -> np.ndarray:
    """dim(f024) * sum over e13, f013, f123, f134 of the weighted Z(-) after Z(+), as a matrix on the in-space."""
    key = list(fixed)
    size = prod(data.slot_dims(1, fixed)[:2])
    total = np.zeros((size, size), dtype=object)
    for e13 in range(len(data.objects)):
        key[_E13] = e13
        choices = [_triangle_labels(data, key, t) for t in ((0, 1, 3), (1, 2, 3), (1, 3, 4))]
        for f013, f123, f134 in product(*choices):
            key[_F[(0, 1, 3)]], key[_F[(1, 2, 3)]], key[_F[(1, 3, 4)]] = f013, f123, f134
            full = tuple(key)
            weight = (
                data.dim_inverse(e13)
                * _face_dim(data, full, (0, 1, 3))
                * _face_dim(data, full, (1, 2, 3))
                * _face_dim(data, full, (1, 3, 4))
            )
            plus, minus = data.z_tensor(1, full), data.z_tensor(-1, full)
            composite = np.tensordot(plus, minus, axes=([2, 3, 4], [0, 1, 2])).reshape(size, size)
            total = total + composite * weight
    return total * _face_dim(data, fixed, (0, 2, 4))


def _out_composite(data: SphericalData, fixed: tuple[int, ...]) -> np.ndarray:
    """Weighted sum over f024 of Z(+) after Z(-), as a matrix on the out-space."""
    key = list(fixed)
    size = prod(data.slot_dims(1, fixed)[2:])
    total = np.zeros((size, size), dtype=object)
    for f024 in _triangle_labels(data, key, (0, 2, 4)):
        key[_F[(0, 2, 4)]] = f024
        full = tuple(key)
        minus, plus = data.z_tensor(-1, full), data.z_tensor(1, full)
        composite = np.tensordot(minus, plus, axes=([3, 4], [0, 1])).reshape(size, size)
        total = total + composite * _face_dim(data, full, (0, 2, 4))
    weight = (
        data.dim_inverse(fixed[_E13])
        * _face_dim(data, fixed, (0, 1, 3))
        * _face_dim(data, fixed, (1, 2, 3))
        * _face_dim(data, fixed, (1, 3, 4))
    )
    return total * weight


def _check_orthogonality(data: SphericalData, rng: Random, limit: int, samples: int) -> _Tally:
    tally = _Tally("orthogonality")
    search = EdgeSearch(SIMPLEX_EDGES, SIMPLEX_TRIANGLES, data)
    keys, tally.exhaustive = _select(
        _simplex_keys(data, search), lambda: _sample_simplex_key(data, search, rng), limit, samples
    )
    summed_in = (_E13, _F[(0, 1, 3)], _F[(1, 2, 3)], _F[(1, 3, 4)])
    # one representative simplex per configuration of the labels held fixed
    in_configs: dict[tuple[int, ...], tuple[int, ...]] = {}
    out_configs: dict[tuple[int, ...], tuple[int, ...]] = {}
    for k in keys:
        in_configs.setdefault(tuple(-1 if p in summed_in else v for p, v in enumerate(k)), k)
        out_configs.setdefault(tuple(-1 if p == _F[(0, 2, 4)] else v for p, v in enumerate(k)), k)

    def run(configs: Iterable[tuple[int, ...]], composite: Callable, side: str) -> None:
        for fixed in configs:
            tally.checked += 1
            try:
                matrix = composite(data, fixed)
            except StateSumError as e:
                tally.fail(f"{side} simplex labels {fixed}: {e.message}")
                continue
            if not _is_identity(matrix):
                tally.fail(f"{side} composite is not the identity at simplex labels {fixed}")

    run(in_configs.values(), _in_composite, "in")
    run(out_configs.values(), _out_composite, "out")
    return tally


# -------------- hexagon --------------
def _network_side(
    data: SphericalData,
    sphere: OrientedTriangulation,
    side: list[int],
    flip: int,
    interior: Simplex,
    labelling: Labelling,
    open_indices: list[Simplex],
    open_shape: tuple[int, ...],
) -> np.ndarray | None:
    """Sum over the interior triangle's label of the side's network; None when some state space is empty."""
    a, b, c = interior
    key = (labelling.edge(a, b), labelling.edge(b, c), labelling.edge(a, c))
    total = np.zeros(open_shape, dtype=object)
    for index, label in enumerate(data.labels(*key)):
        term_labels = Labelling(labelling.edge_labels, {**labelling.face_labels, interior: index})
        tensors = []
        for facet in side:
            vertices = sphere.facets[facet]
            sign = flip * sphere.epsilon[facet]
            array = data.z_tensor(sign, simplex_key(vertices, term_labels))
            if array.size == 0:
                return None
            tensors.append((array, tuple(omit(vertices, k) for k in SLOT_ORDER[sign])))
        total = total + contract(tensors, open_indices) * label.dim
    return total


def _check_hexagon(data: SphericalData, rng: Random, limit: int, samples: int) -> _Tally:
    tally = _Tally("hexagon")
    sphere = boundary_5simplex()
    left_face, right_face = (0, 2, 4), (1, 3, 5)
    left = [i for i, f in enumerate(sphere.facets) if set(left_face) <= set(f)]
    right = [i for i, f in enumerate(sphere.facets) if set(right_face) <= set(f)]
    open_indices = sorted({t for i in left for t in faces(sphere.facets[i], 4) if not set(left_face) <= set(t)})
    triangles = [t for t in sphere.base.triangles if t not in (left_face, right_face)]
    search = EdgeSearch(spanning_edge_order(range(6), sphere.base.edges), triangles, data)

    def labellings(colouring: tuple[int, ...]) -> Iterator[Labelling]:
        edge_labels = dict(zip(search.edges, colouring, strict=True))
        for choice in product(*face_choices(data, triangles, edge_labels)):
            yield Labelling(edge_labels, dict(zip(triangles, choice, strict=True)))

    def sampler() -> Labelling | None:
        colouring = search.sample(rng)
        if colouring is None:
            return None
        edge_labels = dict(zip(search.edges, colouring, strict=True))
        choice = [rng.choice(r) for r in face_choices(data, triangles, edge_labels)]
        return Labelling(edge_labels, dict(zip(triangles, choice, strict=True)))

    space = (labelling for colouring in search.colourings() for labelling in labellings(colouring))
    instances, tally.exhaustive = _select(space, sampler, limit, samples)
    for labelling in instances:
        tally.checked += 1
        try:
            open_shape = tuple(
                data.twohom(
                    (
                        *(labelling.edge(*e) for e in faces(t, 2)),
                        *(labelling.face(*f) for f in faces(t, 3)),
                    )
                )
                for t in open_indices
            )
            lhs = _network_side(data, sphere, left, 1, left_face, labelling, open_indices, open_shape)
            rhs = _network_side(data, sphere, right, -1, right_face, labelling, open_indices, open_shape)
        except StateSumError as e:
            tally.fail(f"edge labels {sorted(labelling.edge_labels.items())}: {e.message}")
            continue
        if lhs is None or rhs is None or 0 in open_shape:
            tally.vacuous += 1
            continue
        if not all(x == y for x, y in zip(lhs.flat, rhs.flat, strict=True)):
            tally.fail(f"sides differ at edge labels {sorted(labelling.edge_labels.items())}")
    if tally.vacuous:
        logger.warning(f"Hexagon check skipped {tally.vacuous} labellings with an empty state space")
    return tally


def verify_data(
    data: SphericalData,
    sample_budget: int | None = None,
    seed: int = 0,
    check_hexagon: bool | None = None,
    exhaustive_limit: int | None = None,
) -> VerificationReport:
    """Run every consistency check exactly.

    Label spaces with at most ``exhaustive_limit`` members are checked exhaustively, larger ones on
    ``sample_budget`` seeded random draws.
    """
    rng = Random(seed)
    limit = settings.EXHAUSTIVE_LIMIT if exhaustive_limit is None else exhaustive_limit
    samples = settings.SAMPLE_SIZE if sample_budget is None else sample_budget
    hexagon = settings.CHECK_HEXAGON if check_hexagon is None else check_hexagon

    tallies = [
        _check_dimension_sums(data),
        _check_tetrahedra(data, rng, limit, samples),
        _check_orthogonality(data, rng, limit, samples),
    ]
    if hexagon:
        tallies.append(_check_hexagon(data, rng, limit, samples))

    report = VerificationReport(
        passed=all(t.failed == 0 for t in tallies),
        K=str(data.K),
        checks=[t.outcome() for t in tallies],
        failures=[message for t in tallies for message in t.messages],
    )
    logger.info(f"Verified {data.name}: {'passed' if report.passed else 'failed'}")
    return report
