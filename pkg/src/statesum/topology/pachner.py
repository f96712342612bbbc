"""
Bistellar flips of closed triangulated 4-manifolds.

Every move lives in the boundary of a 5-simplex on a vertex set S of size 6, split as S = B + A. The move replaces
the facets S - {a} (a in A), which form the star of B, by the facets S - {b} (b in B). It is admissible when the star
of B is exactly those facets and A does not yet span a face. The kind is named by how many facets are removed.
"""

from collections import defaultdict
from random import Random

from ..core.config import settings
from ..core.exceptions.base import StateSumError
from ..core.exceptions.complex_exceptions import InvalidMoveError
from ..core.logger import logging
from ..schemas.moves import MoveKind, MoveSite, WalkReport
from .complex import Simplex, Triangulation4, faces, orient, require_closed

logger = logging.getLogger(__name__)


def _incidence(T: Triangulation4) -> dict[Simplex, list[int]]:
    """Facet indices containing each face of every dimension."""
    star: dict[Simplex, list[int]] = defaultdict(list)
    for index, facet in enumerate(T.facets):
        for size in range(1, 6):
            for face in faces(facet, size):
                star[face].append(index)
    return star


def _site(T: Triangulation4, support: Simplex, incidence: dict[Simplex, list[int]]) -> MoveSite | None:
    support = tuple(sorted(support))
    if not 1 <= len(support) <= 5 or len(set(support)) != len(support):
        return None
    kind = MoveKind.for_support(len(support))
    star = incidence.get(support, [])
    if len(star) != 6 - len(support):
        return None
    if kind is MoveKind.ONE_FIVE:
        vertex_set = (*support, T.vertex_count)
    else:
        vertex_set = tuple(sorted({v for i in star for v in T.facets[i]}))
        if len(vertex_set) != 6:
            return None
    apex = tuple(v for v in vertex_set if v not in support)
    if apex in incidence:
        return None
    delete = tuple(tuple(v for v in vertex_set if v != a) for a in apex)
    insert = tuple(tuple(v for v in vertex_set if v != b) for b in support)
    if set(delete) != {T.facets[i] for i in star}:
        return None
    if any(f in T.facet_set for f in insert):
        return None
    return MoveSite(kind=kind, support=support, delete=delete, insert=insert)


def enumerate_moves(T: Triangulation4) -> list[MoveSite]:
    """All admissible sites, ordered by kind (1-5, 2-4, 3-3, 4-2, 5-1) and then by support."""
    if not T.facets:
        return []
    incidence = _incidence(T)
    candidates: list[Simplex] = list(T.facets)
    for size in (4, 3, 2, 1):
        candidates.extend(sorted(face for face in incidence if len(face) == size))
    sites = [site for support in candidates if (site := _site(T, support, incidence)) is not None]
    logger.debug(f"{len(sites)} admissible moves among {len(candidates)} candidate supports")
    return sites


def locate_move(T: Triangulation4, kind: MoveKind | str, support: Simplex) -> MoveSite:
    kind = MoveKind(kind)
    if len(support) != kind.support_size:
        raise InvalidMoveError(f"{kind.value} needs a support of {kind.support_size} vertices, got {tuple(support)}")
    site = _site(T, tuple(support), _incidence(T))
    if site is None:
        raise InvalidMoveError(f"No admissible {kind.value} move at {tuple(sorted(support))}")
    return site


def apply_move(T: Triangulation4, site: MoveSite) -> Triangulation4:
    """Perform ``site`` on ``T``.

    A 1-5 move introduces vertex ``T.vertex_count``; a 5-1 move closes the id gap by shifting higher ids down. The
    surviving facets keep their order and the orientation is pinned on the first of them.
    """
    current = _site(T, site.support, _incidence(T)) if len(site.support) == site.kind.support_size else None
    if current != site:
        raise InvalidMoveError(f"Move {site.describe()} is invalid or stale for this complex")

    deleted = set(site.delete)
    survivors = [i for i, f in enumerate(T.facets) if f not in deleted]
    facets = [T.facets[i] for i in survivors] + list(site.insert)
    vertex_count = T.vertex_count
    if site.kind is MoveKind.ONE_FIVE:
        vertex_count += 1
    elif site.kind is MoveKind.FIVE_ONE:
        removed = site.support[0]
        facets = [tuple(v - 1 if v > removed else v for v in f) for f in facets]
        vertex_count -= 1

    pin = None
    if survivors:
        try:
            pin = (0, orient(T).epsilon[survivors[0]])
        except StateSumError:
            pin = None
    logger.debug(f"Applied {site.describe()}: {vertex_count} vertices, {len(facets)} facets")
    return Triangulation4(vertex_count=vertex_count, facets=tuple(facets), orientation_pin=pin)


def random_walk(
    T: Triangulation4, steps: int, seed: int, max_vertices: int | None = None
) -> tuple[Triangulation4, WalkReport]:
    """Apply ``steps`` moves drawn uniformly from the admissible sites.

    1-5 moves are excluded once the vertex count reaches ``max_vertices``. A walk with no admissible move stops
    early and is flagged as stalled.
    """
    require_closed(T)
    cap = settings.MAX_VERTICES if max_vertices is None else max_vertices
    rng = Random(seed)
    current = T
    moves: list[str] = []
    stalled = False
    for step in range(steps):
        sites = [
            s for s in enumerate_moves(current) if not (s.kind is MoveKind.ONE_FIVE and current.vertex_count >= cap)
        ]
        if not sites:
            stalled = True
            logger.warning(f"Walk with seed {seed} stalled after {step} of {steps} steps")
            break
        site = rng.choice(sites)
        current = apply_move(current, site)
        moves.append(site.describe())

    report = WalkReport(
        seed=seed,
        steps_requested=steps,
        steps_taken=len(moves),
        stalled=stalled,
        final_vertices=current.vertex_count,
        final_facets=len(current.facets),
        moves=moves,
    )
    logger.info(f"Walk finished: {report.steps_taken} moves, {current.vertex_count} vertices")
    return current, report
