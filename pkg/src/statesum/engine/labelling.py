"""
Admissible labellings by backtracking.

Edges are visited in a spanning-tree guided order: vertices are reached breadth-first and every vertex contributes
its edges back to earlier vertices, the tree edge first. A triangle is checked as soon as its last edge is assigned,
and the candidate labels for that edge are narrowed through the data's triangle tables.
"""

from collections.abc import Iterator, Mapping, Sequence
from dataclasses import dataclass
from itertools import product
from random import Random
from typing import TYPE_CHECKING, Protocol

import networkx as nx

from ..core.logger import logging

if TYPE_CHECKING:
    from ..category.catdata import SphericalData
    from ..topology.complex import Triangulation4

logger = logging.getLogger(__name__)

Simplex = tuple[int, ...]


class LabelTables(Protocol):
    """What the search needs from the data: the simple objects and the triangle completion index."""

    @property
    def objects(self) -> Sequence[object]: ...

    def completions(self, slot: int, x: int, y: int) -> frozenset[int]: ...


@dataclass(frozen=True)
class Labelling:
    """Simple objects on edges and triangle-label indices on triangles."""

    edge_labels: Mapping[Simplex, int]
    face_labels: Mapping[Simplex, int]

    def edge(self, i: int, j: int) -> int:
        return self.edge_labels[(i, j)]

    def face(self, i: int, j: int, k: int) -> int:
        return self.face_labels[(i, j, k)]


def spanning_edge_order(vertices: Sequence[int], edges: Sequence[Simplex]) -> list[Simplex]:
    graph = nx.Graph()
    graph.add_nodes_from(sorted(vertices))
    graph.add_edges_from(edges)
    order: list[Simplex] = []
    visited: list[int] = []
    rank: dict[int, int] = {}
    for component in sorted(nx.connected_components(graph), key=min):
        root = min(component)
        parents = {root: None} | {child: parent for parent, child in nx.bfs_edges(graph, root)}
        for v in parents:
            rank[v] = len(visited)
            visited.append(v)
            back = sorted((u for u in graph[v] if u in rank and u != v), key=rank.__getitem__)
            parent = parents[v]
            if parent is not None:
                back.remove(parent)
                back.insert(0, parent)
            order.extend(tuple(sorted((u, v))) for u in back)
    return order


class EdgeSearch:
    """Backtracking over edge colourings whose every triangle has a non-empty label set."""

    def __init__(self, edges: Sequence[Simplex], triangles: Sequence[Simplex], data: LabelTables) -> None:
        self.edges = list(edges)
        self.data = data
        position = {e: d for d, e in enumerate(self.edges)}
        self.closing: list[list[tuple[int, int, int]]] = [[] for _ in self.edges]
        for i, j, k in triangles:
            # slots of the triangle key (l(ij), l(jk), l(ik))
            slots = (position[(i, j)], position[(j, k)], position[(i, k)])
            last = max(range(3), key=slots.__getitem__)
            others = tuple(slots[s] for s in range(3) if s != last)
            self.closing[slots[last]].append((last, *others))
        self.all_labels = tuple(range(len(data.objects)))

    @classmethod
    def for_complex(cls, T: "Triangulation4", data: LabelTables) -> "EdgeSearch":
        return cls(spanning_edge_order(range(T.vertex_count), T.edges), T.triangles, data)

    def candidates(self, depth: int, assigned: Sequence[int]) -> Sequence[int]:
        allowed: set[int] | None = None
        for slot, a, b in self.closing[depth]:
            options = self.data.completions(slot, assigned[a], assigned[b])
            allowed = set(options) if allowed is None else allowed & options
            if not allowed:
                return ()
        return self.all_labels if allowed is None else sorted(allowed)

    def colourings(self, prefix: Sequence[int] = ()) -> Iterator[tuple[int, ...]]:
        """Every admissible colouring, in lexicographic order along the edge order."""
        n = len(self.edges)
        assigned = list(prefix) + [0] * (n - len(prefix))
        for depth in range(len(prefix)):
            if assigned[depth] not in self.candidates(depth, assigned):
                return
        if len(prefix) == n:
            yield tuple(assigned)
            return
        start = len(prefix)
        stack = [iter(self.candidates(start, assigned))]
        while stack:
            depth = start + len(stack) - 1
            label = next(stack[-1], None)
            if label is None:
                stack.pop()
                continue
            assigned[depth] = label
            if depth + 1 == n:
                yield tuple(assigned)
            else:
                stack.append(iter(self.candidates(depth + 1, assigned)))

    def sample(self, rng: Random) -> tuple[int, ...] | None:
        """One colouring from a randomized depth-first search, or None when there is none."""
        n = len(self.edges)
        assigned = [0] * n
        if n == 0:
            return ()

        def shuffled(depth: int) -> Iterator[int]:
            options = list(self.candidates(depth, assigned))
            rng.shuffle(options)
            return iter(options)

        stack = [shuffled(0)]
        while stack:
            depth = len(stack) - 1
            label = next(stack[-1], None)
            if label is None:
                stack.pop()
                continue
            assigned[depth] = label
            if depth + 1 == n:
                return tuple(assigned)
            stack.append(shuffled(depth + 1))
        return None

    def first_choices(self) -> list[int]:
        if not self.edges:
            return []
        return list(self.candidates(0, [0] * len(self.edges)))


def face_choices(
    data: "SphericalData", triangles: Sequence[Simplex], edge_labels: Mapping[Simplex, int]
) -> list[range]:
    return [
        range(len(data.labels(edge_labels[(i, j)], edge_labels[(j, k)], edge_labels[(i, k)])))
        for i, j, k in triangles
    ]


def expand_faces(
    data: "SphericalData", triangles: Sequence[Simplex], edge_labels: Mapping[Simplex, int]
) -> Iterator[Labelling]:
    for choice in product(*face_choices(data, triangles, edge_labels)):
        yield Labelling(edge_labels=edge_labels, face_labels=dict(zip(triangles, choice, strict=True)))


def enumerate_labellings(
    T: "Triangulation4", data: "SphericalData", prefix: Sequence[int] = ()
) -> Iterator[Labelling]:
    """All admissible labellings of ``T``; ``prefix`` fixes the labels of the first edges of the search order."""
    search = EdgeSearch.for_complex(T, data)
    for colouring in search.colourings(prefix):
        edge_labels = dict(zip(search.edges, colouring, strict=True))
        yield from expand_faces(data, T.triangles, edge_labels)
