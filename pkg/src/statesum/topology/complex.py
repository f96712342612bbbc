"""
Closed triangulated 4-manifolds with totally ordered vertices.

A complex is the list of its 4-simplices (facets), each a strictly increasing 5-tuple of vertex ids; the vertex order
is the integer order. Within a facet the tetrahedron at position k is the one omitting the k-th vertex, and its
boundary sign is (-1)^k.
"""

from collections import defaultdict
from collections.abc import Sequence
from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations

import networkx as nx

from ..core.exceptions.complex_exceptions import (
    DisconnectedComplexError,
    DuplicateFacetError,
    InvalidPermutationError,
    NonOrientableError,
    NotClosedError,
    RepeatedVertexError,
    TriangulationParseError,
    VertexRangeError,
)
from ..core.logger import logging
from ..core.utils.textfile import iter_records
from ..schemas.complex import FaceVector, OrientationReport, ValidationReport

logger = logging.getLogger(__name__)

Simplex = tuple[int, ...]


def faces(simplex: Simplex, size: int) -> list[Simplex]:
    return list(combinations(simplex, size))


def omit(simplex: Simplex, k: int) -> Simplex:
    return simplex[:k] + simplex[k + 1 :]


def induced_sign(epsilon: int, k: int) -> int:
    """Sign with which the facet's k-th boundary tetrahedron is induced."""
    return epsilon if k % 2 == 0 else -epsilon


@dataclass(frozen=True)
class Triangulation4:
    vertex_count: int
    facets: tuple[Simplex, ...]
    orientation_pin: tuple[int, int] | None = field(default=None, compare=False)

    def __post_init__(self) -> None:
        normalized = []
        seen: set[Simplex] = set()
        for facet in self.facets:
            simplex = tuple(sorted(int(v) for v in facet))
            if len(simplex) != 5:
                raise RepeatedVertexError(f"Facet {tuple(facet)} does not have 5 vertices")
            if len(set(simplex)) != 5:
                raise RepeatedVertexError(f"Facet {tuple(facet)} has a repeated vertex")
            if simplex[0] < 0 or simplex[-1] >= self.vertex_count:
                raise VertexRangeError(f"Facet {tuple(facet)} uses a vertex outside 0..{self.vertex_count - 1}")
            if simplex in seen:
                raise DuplicateFacetError(f"Duplicate facet {simplex}")
            seen.add(simplex)
            normalized.append(simplex)
        used = {v for simplex in normalized for v in simplex}
        missing = sorted(set(range(self.vertex_count)) - used)
        if missing:
            raise VertexRangeError(f"Vertex {missing[0]} does not occur in any facet")
        object.__setattr__(self, "facets", tuple(normalized))
        if self.orientation_pin is not None:
            index, sign = self.orientation_pin
            if not 0 <= index < len(normalized) or sign not in (1, -1):
                raise TriangulationParseError(f"Bad orientation pin {self.orientation_pin}")

    # -------------- derived faces --------------
    @cached_property
    def facet_set(self) -> frozenset[Simplex]:
        return frozenset(self.facets)

    @cached_property
    def tetrahedra(self) -> tuple[Simplex, ...]:
        return tuple(sorted({t for f in self.facets for t in faces(f, 4)}))

    @cached_property
    def triangles(self) -> tuple[Simplex, ...]:
        return tuple(sorted({t for f in self.facets for t in faces(f, 3)}))

    @cached_property
    def edges(self) -> tuple[Simplex, ...]:
        return tuple(sorted({e for f in self.facets for e in faces(f, 2)}))

    @cached_property
    def tetrahedron_facets(self) -> dict[Simplex, list[int]]:
        """Incident facet indices of every tetrahedron."""
        incidence: dict[Simplex, list[int]] = defaultdict(list)
        for index, facet in enumerate(self.facets):
            for tet in faces(facet, 4):
                incidence[tet].append(index)
        return dict(incidence)

    @cached_property
    def adjacency(self) -> nx.Graph:
        """Facets joined when they share a tetrahedron; edges carry the shared tetrahedron."""
        graph = nx.Graph()
        graph.add_nodes_from(range(len(self.facets)))
        for tet, incident in self.tetrahedron_facets.items():
            for a, b in combinations(incident, 2):
                graph.add_edge(a, b, tetrahedron=tet)
        return graph

    @cached_property
    def skeleton(self) -> nx.Graph:
        graph = nx.Graph()
        graph.add_nodes_from(range(self.vertex_count))
        graph.add_edges_from(self.edges)
        return graph

    def star(self, face: Simplex) -> list[int]:
        members = set(face)
        return [i for i, f in enumerate(self.facets) if members.issubset(f)]

    def has_face(self, face: Simplex) -> bool:
        face = tuple(sorted(face))
        size = len(face)
        if size == 5:
            return face in self.facet_set
        lookup = {1: None, 2: self.edges, 3: self.triangles, 4: self.tetrahedra}[size]
        if lookup is None:
            return 0 <= face[0] < self.vertex_count
        return face in set(lookup)

    def face_vector(self) -> FaceVector:
        return FaceVector(
            vertices=self.vertex_count,
            edges=len(self.edges),
            triangles=len(self.triangles),
            tetrahedra=len(self.tetrahedra),
            facets=len(self.facets),
        )


@dataclass(frozen=True)
class OrientedTriangulation:
    """A triangulation with a coherent sign per facet."""

    base: Triangulation4
    epsilon: tuple[int, ...]
    reference: int = 0

    def __post_init__(self) -> None:
        if len(self.epsilon) != len(self.base.facets):
            raise NonOrientableError("One orientation sign per facet is required")
        for tet, incident in self.base.tetrahedron_facets.items():
            total = sum(self.induced(i, tet) for i in incident)
            if len(incident) != 2 or total != 0:
                raise NonOrientableError(f"Orientation is not coherent at tetrahedron {tet}")

    @property
    def vertex_count(self) -> int:
        return self.base.vertex_count

    @property
    def facets(self) -> tuple[Simplex, ...]:
        return self.base.facets

    def induced(self, facet_index: int, tet: Simplex) -> int:
        facet = self.base.facets[facet_index]
        missing = next(v for v in facet if v not in tet)
        return induced_sign(self.epsilon[facet_index], facet.index(missing))

    def report(self) -> OrientationReport:
        return OrientationReport(
            reference=self.reference,
            reference_sign=self.epsilon[self.reference] if self.epsilon else 1,
            epsilon=list(zip(self.base.facets, self.epsilon, strict=True)),
        )


# -------------- operations --------------
def validate(T: Triangulation4) -> ValidationReport:
    offending = sorted((tet, len(inc)) for tet, inc in T.tetrahedron_facets.items() if len(inc) != 2)
    notes = []
    if not T.facets:
        notes.append("empty complex")
        connected = False
    else:
        connected = nx.is_connected(T.adjacency)
    if offending:
        notes.append(f"{len(offending)} tetrahedra not in exactly two facets")
    if T.facets and not connected:
        notes.append(f"{nx.number_connected_components(T.adjacency)} connected components")
    return ValidationReport(
        is_closed_pseudomanifold=not offending,
        is_connected=connected,
        offending_tetrahedra=offending,
        notes="; ".join(notes),
    )


def require_closed(T: Triangulation4) -> None:
    if any(len(inc) != 2 for inc in T.tetrahedron_facets.values()):
        raise NotClosedError()


def orient(T: Triangulation4, reference: int | None = None, sign: int | None = None) -> OrientedTriangulation:
    """Propagate facet signs breadth-first from ``reference`` so shared tetrahedra get opposite induced signs.

    Without an explicit reference the file's orientation pin is used, else facet 0 with sign +1.
    """
    report = validate(T)
    if not report.is_closed_pseudomanifold:
        raise NotClosedError()
    if not report.is_connected:
        raise DisconnectedComplexError("orient needs a connected complex; split components first")
    if reference is None:
        reference, pinned = T.orientation_pin or (0, 1)
        sign = pinned if sign is None else sign
    if not 0 <= reference < len(T.facets):
        raise NonOrientableError(f"Reference facet {reference} out of range")
    sign = 1 if sign is None else sign

    epsilon: dict[int, int] = {reference: sign}
    graph = T.adjacency
    for a, b in nx.bfs_edges(graph, reference):
        tet = graph.edges[a, b]["tetrahedron"]
        epsilon[b] = -_boundary_sign(T.facets[a], tet) * _boundary_sign(T.facets[b], tet) * epsilon[a]
    for a, b, tet in graph.edges(data="tetrahedron"):
        if _boundary_sign(T.facets[a], tet) * epsilon[a] == _boundary_sign(T.facets[b], tet) * epsilon[b]:
            raise NonOrientableError(f"Contradictory signs across tetrahedron {tet}")
    logger.debug(f"Oriented {len(T.facets)} facets from reference {reference}")
    return OrientedTriangulation(
        base=T, epsilon=tuple(epsilon[i] for i in range(len(T.facets))), reference=reference
    )


def _boundary_sign(facet: Simplex, tet: Simplex) -> int:
    missing = next(v for v in facet if v not in tet)
    return induced_sign(1, facet.index(missing))


def boundary_5simplex() -> OrientedTriangulation:
    """The boundary of the 5-simplex, facet i omitting vertex i, oriented with sign (-1)^i."""
    vertices = tuple(range(6))
    T = Triangulation4(vertex_count=6, facets=tuple(omit(vertices, i) for i in range(6)))
    return orient(T, reference=0)


def relabel(T: Triangulation4, perm: Sequence[int]) -> Triangulation4:
    """Rename vertex v to ``perm[v]``.

    The orientation pin follows the relabelled reference facet, so the oriented manifold is unchanged.
    """
    if sorted(perm) != list(range(T.vertex_count)):
        raise InvalidPermutationError(f"{list(perm)} is not a permutation of 0..{T.vertex_count - 1}")
    images = [tuple(perm[v] for v in facet) for facet in T.facets]
    pin = None
    if images:
        index, sign = T.orientation_pin or (0, 1)
        pin = (index, sign * permutation_parity(images[index]))
    return Triangulation4(
        vertex_count=T.vertex_count, facets=tuple(tuple(sorted(f)) for f in images), orientation_pin=pin
    )


def permutation_parity(sequence: Sequence[int]) -> int:
    """Sign of the permutation sorting ``sequence``."""
    inversions = sum(1 for a, b in combinations(sequence, 2) if a > b)
    return -1 if inversions % 2 else 1


def connected_components(T: Triangulation4) -> list[Triangulation4]:
    """Each facet-connected component as its own complex, vertices renumbered in increasing order."""
    components = []
    for nodes in sorted(nx.connected_components(T.adjacency), key=min):
        facets = [T.facets[i] for i in sorted(nodes)]
        used = sorted({v for f in facets for v in f})
        renumber = {v: i for i, v in enumerate(used)}
        components.append(
            Triangulation4(vertex_count=len(used), facets=tuple(tuple(renumber[v] for v in f) for f in facets))
        )
    return components


# -------------- files --------------
def load_triangulation(text: str) -> Triangulation4:
    vertex_count: int | None = None
    facets: list[Simplex] = []
    pin: tuple[int, int] | None = None
    seen: dict[Simplex, int] = {}
    for line, tokens in iter_records(text):
        keyword, args = tokens[0], tokens[1:]
        try:
            values = [int(tok) for tok in args]
        except ValueError as e:
            raise TriangulationParseError(f"non-integer token in {' '.join(tokens)!r}", line=line) from e
        if keyword == "vertices":
            if vertex_count is not None or len(values) != 1 or values[0] < 0:
                raise TriangulationParseError("expected a single 'vertices <v>' header", line=line)
            vertex_count = values[0]
        elif keyword == "simplex":
            if vertex_count is None:
                raise TriangulationParseError("'simplex' before the 'vertices' header", line=line)
            if len(values) != 5:
                raise TriangulationParseError("a simplex needs exactly 5 vertex ids", line=line)
            simplex = tuple(sorted(values))
            if len(set(simplex)) != 5:
                raise RepeatedVertexError(f"line {line}: repeated vertex in {tuple(values)}")
            if simplex[0] < 0 or simplex[-1] >= vertex_count:
                raise VertexRangeError(f"line {line}: vertex id out of range in {tuple(values)}")
            if simplex in seen:
                raise DuplicateFacetError(f"line {line}: duplicate facet {simplex} (first on line {seen[simplex]})")
            seen[simplex] = line
            facets.append(simplex)
        elif keyword == "orient":
            if len(values) != 2 or values[1] not in (1, -1):
                raise TriangulationParseError("expected 'orient <facet-index> <+1|-1>'", line=line)
            pin = (values[0], values[1])
        else:
            raise TriangulationParseError(f"unknown keyword {keyword!r}", line=line)
    if vertex_count is None:
        raise TriangulationParseError("missing 'vertices <v>' header")
    return Triangulation4(vertex_count=vertex_count, facets=tuple(facets), orientation_pin=pin)


def dump_triangulation(T: Triangulation4) -> str:
    lines = [f"vertices {T.vertex_count}"]
    lines.extend("simplex " + " ".join(str(v) for v in facet) for facet in T.facets)
    if T.orientation_pin is not None:
        index, sign = T.orientation_pin
        lines.append(f"orient {index} {'+1' if sign > 0 else '-1'}")
    return "\n".join(lines) + "\n"
