"""
Tabulated spherical 2-category data.

A labelled 4-simplex (01234) is keyed by 20 integers: the simple objects on its ten edges in lexicographic order
(01, 02, ..., 34) followed by the triangle-label indices of its ten triangles (012, 013, ..., 234). The label set of
a triangle (ijk) is ``triangle_labels[(l(ij), l(jk), l(ik))]``. A tetrahedron (ijkl) is keyed by its six edges
(ij, ik, il, jk, jl, kl) and four triangles (ijk, ijl, ikl, jkl).

The partition tensor of +(01234) has axes (0234), (0124) | (1234), (0134), (0123); that of -(01234) has the two
groups swapped.
"""

from collections import defaultdict
from collections.abc import Iterator, Mapping
from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations, product
from math import prod
from typing import Protocol

import numpy as np

from ..algebra.cocycle import FourCochain, require_cocycle
from ..algebra.cyclotomic import Cyclotomic, parse_cyclotomic
from ..algebra.groups import FiniteGroup
from ..core.exceptions.engine_exceptions import DataParseError, DataShapeError, InadmissibleLabelError
from ..core.logger import logging
from ..core.utils.textfile import iter_records

logger = logging.getLogger(__name__)

SimplexKey = tuple[int, ...]

SIMPLEX_EDGES = tuple(combinations(range(5), 2))
SIMPLEX_TRIANGLES = tuple(combinations(range(5), 3))
EDGE_POSITION = {e: i for i, e in enumerate(SIMPLEX_EDGES)}
TRIANGLE_POSITION = {t: i for i, t in enumerate(SIMPLEX_TRIANGLES)}

# omitted vertex of each axis; in-slots first
SLOT_ORDER = {1: (1, 3, 0, 2, 4), -1: (0, 2, 4, 1, 3)}
IN_SLOTS = {1: 2, -1: 3}


def tetra_key(key: SimplexKey, omitted: int) -> SimplexKey:
    """Labels of the boundary tetrahedron of a labelled 4-simplex that omits position ``omitted``."""
    rest = [p for p in range(5) if p != omitted]
    edges = [key[EDGE_POSITION[e]] for e in combinations(rest, 2)]
    faces = [key[10 + TRIANGLE_POSITION[t]] for t in combinations(rest, 3)]
    return (*edges, *faces)


def triangle_key(key: SimplexKey, triangle: tuple[int, int, int]) -> tuple[int, int, int]:
    i, j, k = triangle
    return key[EDGE_POSITION[(i, j)]], key[EDGE_POSITION[(j, k)]], key[EDGE_POSITION[(i, k)]]


@dataclass(frozen=True)
class SimpleObject:
    dim: Cyclotomic
    dual: int


@dataclass(frozen=True)
class FaceLabel:
    id: int
    dim: Cyclotomic


class TensorSource(Protocol):
    def tensor(self, sign: int, key: SimplexKey) -> np.ndarray | None: ...

    def keys(self) -> Iterator[tuple[int, SimplexKey]]: ...


@dataclass(frozen=True)
class GroupTensors:
    """Phases z^(+-pi(l(01), l(12), l(23), l(34))) on flat 4-simplices."""

    group: FiniteGroup
    pi: FourCochain

    def tensor(self, sign: int, key: SimplexKey) -> np.ndarray | None:
        if any(key[10:]):
            return None
        for triangle in SIMPLEX_TRIANGLES:
            a, b, c = triangle_key(key, triangle)
            if self.group.mul(a, b) != c:
                return None
        args = (key[EDGE_POSITION[(i, i + 1)]] for i in range(4))
        value = Cyclotomic.root(self.pi.N, sign * self.pi.value(*args))
        return _scalar_tensor(value)

    def keys(self) -> Iterator[tuple[int, SimplexKey]]:
        mul = self.group.mul
        for sign in (1, -1):
            for a, b, c, d in product(range(self.group.order), repeat=4):
                ab, bc, cd = mul(a, b), mul(b, c), mul(c, d)
                edges = (a, ab, mul(ab, c), mul(mul(ab, c), d), b, bc, mul(bc, d), c, cd, d)
                yield sign, (*edges, *(0,) * 10)


@dataclass(frozen=True)
class TableTensors:
    tables: Mapping[tuple[int, SimplexKey], np.ndarray]

    def tensor(self, sign: int, key: SimplexKey) -> np.ndarray | None:
        return self.tables.get((sign, key))

    def keys(self) -> Iterator[tuple[int, SimplexKey]]:
        yield from sorted(self.tables, key=lambda k: (-k[0], k[1]))


def _scalar_tensor(value: Cyclotomic) -> np.ndarray:
    array = np.empty((1,) * 5, dtype=object)
    array[(0,) * 5] = value
    return array


@dataclass(frozen=True, eq=False)
class SphericalData:
    N: int
    objects: tuple[SimpleObject, ...]
    triangle_labels: Mapping[tuple[int, int, int], tuple[FaceLabel, ...]]
    twohom_dims: Mapping[SimplexKey, int]
    tensors: TensorSource
    name: str = field(default="data", compare=False)

    def __post_init__(self) -> None:
        n = len(self.objects)
        for index, obj in enumerate(self.objects):
            if obj.dim.is_zero():
                raise DataParseError(f"Object {index} has zero quantum dimension")
            if not 0 <= obj.dual < n:
                raise DataParseError(f"Object {index} has missing dual {obj.dual}")
            dual = self.objects[obj.dual]
            if dual.dual != index:
                raise DataParseError(f"Duality is not an involution at object {index}")
            if dual.dim != obj.dim:
                raise DataParseError(f"Object {index} and its dual {obj.dual} differ in quantum dimension")
        for key, labels in self.triangle_labels.items():
            if any(not 0 <= a < n for a in key):
                raise DataParseError(f"Triangle {key} uses an unknown object")
            for label in labels:
                if label.dim.is_zero():
                    raise DataParseError(f"Label {label.id} of triangle {key} has zero quantum dimension")
        for key, dim in self.twohom_dims.items():
            if dim < 0:
                raise DataParseError(f"Negative 2Hom dimension at tetrahedron labels {key}")

    # -------------- lookups --------------
    @property
    def K(self) -> Cyclotomic:
        return Cyclotomic.from_rational(len(self.objects), self.N)

    def dim(self, obj: int) -> Cyclotomic:
        return self.objects[obj].dim

    def labels(self, a: int, b: int, c: int) -> tuple[FaceLabel, ...]:
        return self.triangle_labels.get((a, b, c), ())

    def face_dim(self, key: tuple[int, int, int], index: int) -> Cyclotomic:
        return self.triangle_labels[key][index].dim

    @cached_property
    def _inverse_dims(self) -> tuple[Cyclotomic, ...]:
        return tuple(obj.dim.inverse() for obj in self.objects)

    def dim_inverse(self, obj: int) -> Cyclotomic:
        return self._inverse_dims[obj]

    @cached_property
    def unit_dimensions(self) -> bool:
        """True when every object and every triangle label has quantum dimension 1."""
        labels = (label for group in self.triangle_labels.values() for label in group)
        return all(obj.dim == 1 for obj in self.objects) and all(label.dim == 1 for label in labels)

    def twohom(self, key: SimplexKey) -> int:
        return self.twohom_dims.get(key, 0)

    @cached_property
    def _completions(self) -> tuple[dict[tuple[int, int], frozenset[int]], ...]:
        index: tuple[dict, dict, dict] = (defaultdict(set), defaultdict(set), defaultdict(set))
        for (a, b, c), labels in self.triangle_labels.items():
            if labels:
                index[0][(b, c)].add(a)
                index[1][(a, c)].add(b)
                index[2][(a, b)].add(c)
        return tuple({k: frozenset(v) for k, v in slot.items()} for slot in index)

    def completions(self, slot: int, x: int, y: int) -> frozenset[int]:
        """Labels for position ``slot`` of a triangle key, given the other two positions in order."""
        return self._completions[slot].get((x, y), frozenset())

    def slot_dims(self, sign: int, key: SimplexKey) -> tuple[int, ...]:
        return tuple(self.twohom(tetra_key(key, k)) for k in SLOT_ORDER[sign])

    def z_tensor(self, sign: int, key: SimplexKey) -> np.ndarray:
        array = self.tensors.tensor(sign, key)
        if array is None:
            raise InadmissibleLabelError(f"No partition tensor for {'+' if sign > 0 else '-'} simplex labels {key}")
        expected = self.slot_dims(sign, key)
        if array.shape != expected:
            raise DataShapeError(f"Tensor for simplex labels {key} has extents {array.shape}, expected {expected}")
        return array

    def tabulate(self) -> dict[tuple[int, SimplexKey], np.ndarray]:
        return {(sign, key): self.z_tensor(sign, key) for sign, key in self.tensors.keys()}

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SphericalData):
            return NotImplemented
        if (self.N, self.objects, dict(self.twohom_dims)) != (other.N, other.objects, dict(other.twohom_dims)):
            return False
        if _nonempty(self.triangle_labels) != _nonempty(other.triangle_labels):
            return False
        mine, theirs = self.tabulate(), other.tabulate()
        if mine.keys() != theirs.keys():
            return False
        return all(_arrays_equal(mine[k], theirs[k]) for k in mine)

    __hash__ = None  # type: ignore[assignment]


def _nonempty(labels: Mapping) -> dict:
    return {k: v for k, v in labels.items() if v}


def _arrays_equal(a: np.ndarray, b: np.ndarray) -> bool:
    return a.shape == b.shape and all(x == y for x, y in zip(a.flat, b.flat, strict=True))


# -------------- builders --------------
def from_group_cocycle(group: FiniteGroup, pi: FourCochain) -> SphericalData:
    """2Hilb[G] twisted by ``pi``: one simple object per element, one label on every flat triangle."""
    require_cocycle(pi)
    N = pi.N
    one = Cyclotomic.one(N)
    n = group.order
    objects = tuple(SimpleObject(dim=one, dual=group.inv(g)) for g in range(n))
    triangle_labels = {(a, b, group.mul(a, b)): (FaceLabel(id=0, dim=one),) for a in range(n) for b in range(n)}
    twohom_dims = {}
    for a, b, c in product(range(n), repeat=3):
        ab, bc = group.mul(a, b), group.mul(b, c)
        twohom_dims[(a, ab, group.mul(ab, c), b, bc, c, 0, 0, 0, 0)] = 1
    logger.debug(f"Built group data for {group.name}: {len(triangle_labels)} admissible triangles")
    return SphericalData(
        N=N,
        objects=objects,
        triangle_labels=triangle_labels,
        twohom_dims=twohom_dims,
        tensors=GroupTensors(group=group, pi=pi),
        name=f"2Hilb[{group.name}]",
    )


# -------------- files --------------
KEYWORDS = {"spherical", "object", "triangle", "twohom", "ztensor"}


def load_data(text: str) -> SphericalData:
    N: int | None = None
    objects: dict[int, SimpleObject] = {}
    triangles: dict[tuple[int, int, int], list[FaceLabel]] = defaultdict(list)
    twohom: dict[SimplexKey, int] = {}
    blocks: list[tuple[int, int, SimplexKey, list[str]]] = []

    for line, tokens in iter_records(text):
        keyword = tokens[0]
        if keyword not in KEYWORDS:
            if not blocks:
                raise DataParseError(f"unknown keyword {keyword!r}", line=line)
            blocks[-1][3].extend(tokens)
            continue
        if keyword != "spherical" and N is None:
            raise DataParseError("missing 'spherical N <N>' header", line=line)
        try:
            if keyword == "spherical":
                if N is not None or len(tokens) != 3 or tokens[1] != "N":
                    raise DataParseError("expected a single 'spherical N <N>' header", line=line)
                N = int(tokens[2])
                if N < 1:
                    raise DataParseError(f"field order must be positive, got {N}", line=line)
            elif keyword == "object":
                if len(tokens) != 6 or tokens[2] != "dim" or tokens[4] != "dual":
                    raise DataParseError("expected 'object <id> dim <cyclo> dual <id>'", line=line)
                index = int(tokens[1])
                if index in objects:
                    raise DataParseError(f"duplicate object {index}", line=line)
                objects[index] = SimpleObject(dim=parse_cyclotomic(tokens[3], N), dual=int(tokens[5]))
            elif keyword == "triangle":
                if len(tokens) != 8 or tokens[4] != "label" or tokens[6] != "dim":
                    raise DataParseError("expected 'triangle <a> <b> <c> label <f> dim <cyclo>'", line=line)
                key = (int(tokens[1]), int(tokens[2]), int(tokens[3]))
                label = int(tokens[5])
                if label != len(triangles[key]):
                    raise DataParseError(f"labels of triangle {key} must be numbered 0, 1, ... in order", line=line)
                triangles[key].append(FaceLabel(id=label, dim=parse_cyclotomic(tokens[7], N)))
            elif keyword == "twohom":
                if len(tokens) != 12:
                    raise DataParseError("expected 'twohom <6 edges> <4 labels> <dim>'", line=line)
                values = [int(tok) for tok in tokens[1:]]
                twohom[tuple(values[:10])] = values[10]
            else:
                if len(tokens) != 22 or tokens[1] not in ("+", "-", "+1", "-1"):
                    raise DataParseError("expected 'ztensor <+|-> <10 edge labels> <10 face labels>'", line=line)
                sign = -1 if tokens[1].startswith("-") else 1
                blocks.append((line, sign, tuple(int(tok) for tok in tokens[2:]), []))
        except ValueError as e:
            raise DataParseError(f"bad value: {e}", line=line) from e

    if N is None:
        raise DataParseError("missing 'spherical N <N>' header")
    if sorted(objects) != list(range(len(objects))):
        raise DataParseError("object ids must be 0..n-1")

    data = SphericalData(
        N=N,
        objects=tuple(objects[i] for i in range(len(objects))),
        triangle_labels={k: tuple(v) for k, v in triangles.items()},
        twohom_dims=twohom,
        tensors=TableTensors(tables={}),
    )
    tables = {}
    for line, sign, key, raw in blocks:
        shape = data.slot_dims(sign, key)
        if len(raw) != prod(shape):
            raise DataShapeError(
                f"line {line}: tensor for {'+' if sign > 0 else '-'} simplex labels {key} has {len(raw)} entries, "
                f"expected extents {shape}"
            )
        try:
            entries = [parse_cyclotomic(tok, N) for tok in raw]
        except ValueError as e:
            raise DataParseError(f"bad cyclotomic literal: {e}", line=line) from e
        array = np.empty(len(entries), dtype=object)
        array[:] = entries
        tables[(sign, key)] = array.reshape(shape)
    return SphericalData(
        N=N,
        objects=data.objects,
        triangle_labels=data.triangle_labels,
        twohom_dims=twohom,
        tensors=TableTensors(tables=tables),
        name="file",
    )


def save_data(data: SphericalData) -> str:
    lines = [f"spherical N {data.N}"]
    for index, obj in enumerate(data.objects):
        lines.append(f"object {index} dim {obj.dim.format_literal()} dual {obj.dual}")
    for key in sorted(data.triangle_labels):
        for index, label in enumerate(data.triangle_labels[key]):
            lines.append(f"triangle {key[0]} {key[1]} {key[2]} label {index} dim {label.dim.format_literal()}")
    for key in sorted(data.twohom_dims):
        lines.append("twohom " + " ".join(str(v) for v in key) + f" {data.twohom_dims[key]}")
    for (sign, key), array in data.tabulate().items():
        lines.append(f"ztensor {'+' if sign > 0 else '-'} " + " ".join(str(v) for v in key))
        if array.size:
            lines.append(" ".join(value.format_literal() for value in array.flat))
    return "\n".join(lines) + "\n"
