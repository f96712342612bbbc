from collections.abc import Hashable, Sequence
from itertools import combinations
from math import prod

import numpy as np

from ..core.exceptions.complex_exceptions import NotClosedError
from ..core.exceptions.engine_exceptions import DataShapeError

Indexed = tuple[np.ndarray, tuple[Hashable, ...]]


def _check_wiring(tensors: Sequence[Indexed], open_indices: Sequence[Hashable]) -> dict[Hashable, int]:
    extents: dict[Hashable, int] = {}
    uses: dict[Hashable, int] = {}
    for array, labels in tensors:
        if array.ndim != len(labels):
            raise DataShapeError(f"Tensor of rank {array.ndim} carries {len(labels)} index labels")
        if len(set(labels)) != len(labels):
            raise DataShapeError(f"Repeated index on a single tensor: {labels}")
        for label, extent in zip(labels, array.shape, strict=True):
            if extents.setdefault(label, extent) != extent:
                raise DataShapeError(f"Index {label} has extents {extents[label]} and {extent}")
            uses[label] = uses.get(label, 0) + 1
    opened = set(open_indices)
    for label, count in uses.items():
        if count > 2:
            raise DataShapeError(f"Index {label} is shared by {count} tensors")
        if count == 1 and label not in opened:
            raise NotClosedError(f"Dangling index {label}")
        if count == 2 and label in opened:
            raise DataShapeError(f"Open index {label} is also contracted")
    missing = opened - set(uses)
    if missing:
        raise DataShapeError(f"Open indices {sorted(map(str, missing))} do not occur in the network")
    return extents


def contract(tensors: Sequence[Indexed], open_indices: Sequence[Hashable] = ()) -> np.ndarray:
    """Contract every index shared by two tensors and return the result with axes ``open_indices``.

    Pairs are merged greedily, always choosing the pair whose intermediate is smallest; pairs sharing an index are
    preferred over outer products. A closed network gives a 0-d object array.
    """
    if not tensors:
        raise DataShapeError("Cannot contract an empty network")
    extents = _check_wiring(tensors, open_indices)

    if not open_indices and all(array.size == 1 for array, _ in tensors):
        value = prod((array.flat[0] for array, _ in tensors[1:]), start=tensors[0][0].flat[0])
        result = np.empty((), dtype=object)
        result[()] = value
        return result

    pool: list[Indexed] = [(array, tuple(labels)) for array, labels in tensors]
    while len(pool) > 1:
        best: tuple[tuple[int, int], int, int] | None = None
        for a, b in combinations(range(len(pool)), 2):
            la, lb = pool[a][1], pool[b][1]
            shared = set(la) & set(lb)
            size = prod(extents[x] for x in (*la, *lb) if x not in shared)
            score = (0 if shared else 1, size)
            if best is None or score < best[0]:
                best = (score, a, b)
        assert best is not None
        _, a, b = best
        (xa, la), (xb, lb) = pool[a], pool[b]
        shared_labels = [x for x in la if x in lb]
        merged = np.tensordot(xa, xb, axes=([la.index(x) for x in shared_labels], [lb.index(x) for x in shared_labels]))
        labels = tuple(x for x in la if x not in shared_labels) + tuple(x for x in lb if x not in shared_labels)
        pool = [t for i, t in enumerate(pool) if i not in (a, b)] + [(np.asarray(merged, dtype=object), labels)]

    array, labels = pool[0]
    if not open_indices:
        result = np.empty((), dtype=object)
        result[()] = array.reshape(())[()]
        return result
    return np.transpose(array, [labels.index(x) for x in open_indices])
