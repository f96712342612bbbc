from collections.abc import Callable, Iterable, Sequence
from concurrent.futures import ProcessPoolExecutor
from functools import reduce
from typing import TypeVar

from ..logger import logging

logger = logging.getLogger(__name__)

T = TypeVar("T")
R = TypeVar("R")


def map_reduce(
    task: Callable[[T], R],
    chunks: Sequence[T],
    combine: Callable[[R, R], R],
    initial: R,
    workers: int = 1,
) -> R:
    """Run ``task`` over ``chunks`` and fold the partial results with ``combine``.

    Parameters
    ----------
    task: Callable
        A picklable top-level function evaluated once per chunk.
    chunks: Sequence
        Independent pieces of work, typically prefixes of a search tree.
    combine: Callable
        Associative reduction of two partial results.
    initial: Any
        Neutral element of ``combine``.
    workers: int
        Number of worker processes; ``1`` runs in-process.

    Returns
    -------
    Any
        The folded result. Partial results are always combined in chunk order, so the outcome does not depend on
        the number of workers.
    """
    if workers <= 1 or len(chunks) <= 1:
        partials: Iterable[R] = map(task, chunks)
        return reduce(combine, partials, initial)

    logger.debug(f"Dispatching {len(chunks)} chunks to {workers} workers")
    with ProcessPoolExecutor(max_workers=workers) as pool:
        partials = list(pool.map(task, chunks))
    return reduce(combine, partials, initial)
