from dataclasses import dataclass, field
from functools import cached_property
from itertools import permutations
from pathlib import Path

import numpy as np

from ..core.exceptions.algebra_exceptions import GroupAxiomError, GroupSpecError
from ..core.logger import logging
from ..core.utils.textfile import iter_records, read_text

logger = logging.getLogger(__name__)

EXHAUSTIVE_ASSOCIATIVITY_ORDER = 64
ASSOCIATIVITY_SAMPLES = 200_000


@dataclass(frozen=True)
class FiniteGroup:
    """A finite group given by its multiplication table; element 0 is the identity.

    ``table[i][j]`` is the index of g_i * g_j.
    """

    table: tuple[tuple[int, ...], ...]
    name: str = field(default="group", compare=False)

    def __post_init__(self) -> None:
        n = len(self.table)
        if n == 0:
            raise GroupAxiomError("A group needs at least one element")
        if any(len(row) != n for row in self.table):
            raise GroupAxiomError("Multiplication table is not square")
        t = self.array
        expected = np.arange(n)
        if t.min() < 0 or t.max() >= n:
            raise GroupAxiomError("Table entry outside 0..n-1")
        for i in range(n):
            if not np.array_equal(np.sort(t[i]), expected):
                raise GroupAxiomError(f"Row {i} is not a permutation")
            if not np.array_equal(np.sort(t[:, i]), expected):
                raise GroupAxiomError(f"Column {i} is not a permutation")
        if not (np.array_equal(t[0], expected) and np.array_equal(t[:, 0], expected)):
            raise GroupAxiomError("Element 0 is not the identity")
        violation = _associativity_violation(t)
        if violation is not None:
            a, b, c = violation
            raise GroupAxiomError(f"Associativity fails for ({a}, {b}, {c})")

    @cached_property
    def array(self) -> np.ndarray:
        return np.array(self.table, dtype=np.int64)

    @property
    def order(self) -> int:
        return len(self.table)

    @cached_property
    def inverse(self) -> tuple[int, ...]:
        return tuple(int(np.flatnonzero(self.array[i] == 0)[0]) for i in range(self.order))

    def mul(self, a: int, b: int) -> int:
        return self.table[a][b]

    def inv(self, a: int) -> int:
        return self.inverse[a]

    def is_abelian(self) -> bool:
        return bool(np.array_equal(self.array, self.array.T))


def _associativity_violation(t: np.ndarray) -> tuple[int, int, int] | None:
    n = t.shape[0]
    if n <= EXHAUSTIVE_ASSOCIATIVITY_ORDER:
        lhs = t[t]
        rhs = t[np.arange(n)[:, None, None], t[None, :, :]]
        bad = np.argwhere(lhs != rhs)
        if bad.size:
            a, b, c = (int(v) for v in bad[0])
            return a, b, c
        return None

    logger.info(f"Order {n} exceeds {EXHAUSTIVE_ASSOCIATIVITY_ORDER}; sampling associativity triples")
    rng = np.random.default_rng(0)
    a, b, c = rng.integers(0, n, size=(3, ASSOCIATIVITY_SAMPLES))
    bad = np.flatnonzero(t[t[a, b], c] != t[a, t[b, c]])
    if bad.size:
        i = bad[0]
        return int(a[i]), int(b[i]), int(c[i])
    return None


# -------------- builders --------------
def cyclic_group(n: int) -> FiniteGroup:
    if n < 1:
        raise GroupSpecError(f"cyclic order must be positive, got {n}")
    table = tuple(tuple((i + j) % n for j in range(n)) for i in range(n))
    return FiniteGroup(name=f"cyclic:{n}", table=table)


def symmetric_group(n: int) -> FiniteGroup:
    """S_n with permutations in lexicographic order (the identity comes first).

    The product is composition ``(p * q)(i) = p(q(i))``.
    """
    if not 1 <= n <= 5:
        raise GroupSpecError(f"sym:<n> supports 1 <= n <= 5, got {n}")
    elements = list(permutations(range(n)))
    index = {p: i for i, p in enumerate(elements)}
    table = tuple(tuple(index[tuple(p[q[i]] for i in range(n))] for q in elements) for p in elements)
    return FiniteGroup(name=f"sym:{n}", table=table)


def direct_product(left: FiniteGroup, right: FiniteGroup) -> FiniteGroup:
    """Pairs (a, b) are indexed lexicographically as a * |right| + b."""
    m = right.order
    size = left.order * m
    table = tuple(
        tuple(left.mul(i // m, j // m) * m + right.mul(i % m, j % m) for j in range(size)) for i in range(size)
    )
    return FiniteGroup(name=f"prod:{left.name},{right.name}", table=table)


def group_from_table(text: str, name: str = "file") -> FiniteGroup:
    """Parse the ``group <n>`` table format."""
    records = list(iter_records(text))
    if not records or records[0][1][0] != "group" or len(records[0][1]) != 2:
        raise GroupSpecError("Group file must start with 'group <n>'")
    try:
        n = int(records[0][1][1])
        rows = [tuple(int(tok) for tok in tokens) for _, tokens in records[1:]]
    except ValueError as e:
        raise GroupSpecError(f"Non-integer entry in group file: {e}") from e
    if len(rows) != n:
        raise GroupSpecError(f"Expected {n} table rows, found {len(rows)}")
    return FiniteGroup(name=name, table=tuple(rows))


def dump_group(group: FiniteGroup) -> str:
    lines = [f"group {group.order}"]
    lines.extend(" ".join(str(v) for v in row) for row in group.table)
    return "\n".join(lines) + "\n"


def group_from_spec(spec: str) -> FiniteGroup:
    """Build a group from ``cyclic:<n>``, ``sym:<n>``, ``prod:<specA>,<specB>`` or ``file:<path>``.

    For products the split happens at the first comma, so only the right factor may itself be a product.
    """
    kind, sep, arg = spec.strip().partition(":")
    if not sep or not arg:
        raise GroupSpecError(f"Malformed group spec {spec!r}")
    try:
        if kind == "cyclic":
            return cyclic_group(int(arg))
        if kind == "sym":
            return symmetric_group(int(arg))
    except ValueError as e:
        raise GroupSpecError(f"Malformed group spec {spec!r}") from e
    if kind == "prod":
        left, comma, right = arg.partition(",")
        if not comma:
            raise GroupSpecError(f"prod needs two factors: {spec!r}")
        return direct_product(group_from_spec(left), group_from_spec(right))
    if kind == "file":
        path = Path(arg)
        if not path.exists():
            raise GroupSpecError(f"Group file not found: {arg}")
        return group_from_table(read_text(path), name=spec)
    raise GroupSpecError(f"Unknown group kind {kind!r} in {spec!r}")
