"""
Group cochains with exponents in Z/N, read as N-th roots of unity.

A 4-cochain pi is the exponent table of the phases z^pi(g, h, k, l). Products are written additively throughout, so
the multiplicative cocycle identity of the state sum becomes the vanishing of the 6-term alternating sum below.
Argument order follows the flatness convention l(ij) * l(jk) = l(ik) used by the engine.
"""

from collections.abc import Mapping
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from itertools import product
from random import Random

import numpy as np

from ..core.exceptions.algebra_exceptions import CochainParseError, CocycleError
from ..core.logger import logging
from ..core.utils.textfile import iter_records
from ..schemas.cocycle import CochainSummary, IdentityCheck
from .cyclotomic import Cyclotomic
from .groups import FiniteGroup

logger = logging.getLogger(__name__)


def _reduced_entries(entries: Mapping[tuple[int, ...], int], N: int, arity: int, order: int) -> dict:
    reduced = {}
    for key, value in entries.items():
        if len(key) != arity or any(not 0 <= g < order for g in key):
            raise CocycleError(f"Bad cochain argument {key} for a group of order {order}")
        e = value % N
        if e:
            reduced[tuple(key)] = e
    return reduced


@dataclass(frozen=True, eq=False)
class _Cochain:
    group: FiniteGroup
    N: int
    entries: Mapping[tuple[int, ...], int] = field(default_factory=dict)
    normalized: bool = False

    arity = 0

    def __post_init__(self) -> None:
        if self.N < 1:
            raise CocycleError(f"Coefficient order must be positive, got {self.N}")
        object.__setattr__(self, "entries", _reduced_entries(self.entries, self.N, self.arity, self.group.order))
        if self.normalized:
            for key in self.entries:
                if 0 in key:
                    raise CocycleError(f"Normalized cochain has a nonzero entry at {key}")

    def value(self, *args: int) -> int:
        return self.entries.get(args, 0)

    def is_normalized(self) -> bool:
        return all(0 not in key for key in self.entries)

    @cached_property
    def dense(self) -> np.ndarray:
        table = np.zeros((self.group.order,) * self.arity, dtype=np.int64)
        for key, e in self.entries.items():
            table[key] = e
        return table

    def summary(self) -> CochainSummary:
        return CochainSummary(
            degree=self.arity,
            N=self.N,
            group_order=self.group.order,
            nonzero_entries=len(self.entries),
            normalized=self.is_normalized(),
        )

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, type(self)):
            return NotImplemented
        return self.group == other.group and self.N == other.N and self.entries == other.entries


@dataclass(frozen=True, eq=False)
class ThreeCochain(_Cochain):
    """eta: G^3 -> Z/N, sparse with default 0."""

    arity = 3


@dataclass(frozen=True, eq=False)
class FourCochain(_Cochain):
    """pi: G^4 -> Z/N, sparse with default 0."""

    arity = 4


def trivial_cocycle(group: FiniteGroup, N: int = 1) -> FourCochain:
    return FourCochain(group=group, N=N, normalized=True)


# -------------- coboundary calculus --------------
def coboundary(eta: ThreeCochain) -> FourCochain:
    """(d eta)(g,h,k,l) = eta(h,k,l) - eta(gh,k,l) + eta(g,hk,l) - eta(g,h,kl) + eta(g,h,k)."""
    t = eta.group.array
    e = eta.dense
    delta = e[None, :, :, :] - e[t] + e[:, t, :] - e[:, :, t] + e[:, :, :, None]
    delta %= eta.N
    entries = {tuple(int(i) for i in idx): int(delta[tuple(idx)]) for idx in np.argwhere(delta)}
    return FourCochain(group=eta.group, N=eta.N, entries=entries, normalized=eta.is_normalized())


def _five_term(pi: FourCochain, g: int) -> np.ndarray:
    """S[h,k,l,m] = pi(h,k,l,m) - pi(gh,k,l,m) + pi(g,hk,l,m) - pi(g,h,kl,m) + pi(g,h,k,lm)."""
    t = pi.group.array
    p = pi.dense
    q = p[g]
    return p - p[t[g]] + q[t] - q[:, t, :] + q[:, :, t]


def check_cocycle(pi: FourCochain) -> IdentityCheck:
    """Scan every (g,h,k,l,m) for a nonzero coboundary; report the first violation."""
    n = pi.group.order
    for g in range(n):
        defect = (_five_term(pi, g) - pi.dense[g][..., None]) % pi.N
        bad = np.argwhere(defect)
        if bad.size:
            witness = (g, *(int(v) for v in bad[0]))
            return IdentityCheck(
                identity="cocycle",
                holds=False,
                checked=g * n**4 + int(np.ravel_multi_index(tuple(bad[0]), defect.shape)) + 1,
                witness=witness,
                detail=f"coboundary is {int(defect[tuple(bad[0])])} mod {pi.N} at {witness}",
            )
    return IdentityCheck(identity="cocycle", holds=True, checked=n**5)


def require_cocycle(pi: FourCochain) -> None:
    report = check_cocycle(pi)
    if not report.holds:
        raise CocycleError(f"Not a 4-cocycle: {report.detail}")


def averaged_identity_check(pi: FourCochain, literal: bool = False) -> IdentityCheck:
    """Check z^pi(g,h,k,l) = |G|^-1 sum_m z^S(g,h,k,l,m) exactly for every (g,h,k,l).

    S is the five-term sum of ``_five_term``. With ``literal=True`` every exponent of the sum is negated, which is the
    sign pattern as it is usually printed; both agree when pi takes values of order two.
    """
    n, N = pi.group.order, pi.N
    sign = -1 if literal else 1
    averages: dict[tuple[int, ...], Cyclotomic] = {}
    for g in range(n):
        exponents = (sign * _five_term(pi, g)) % N
        lhs_exponents = pi.dense[g]
        for h, k, l in product(range(n), repeat=3):
            counts = tuple(np.bincount(exponents[h, k, l], minlength=N).tolist())
            if counts not in averages:
                averages[counts] = Cyclotomic.from_power_counts(N, [Fraction(c, n) for c in counts])
            lhs = Cyclotomic.root(N, int(lhs_exponents[h, k, l]))
            if averages[counts] != lhs:
                witness = (g, h, k, l)
                return IdentityCheck(
                    identity="averaged 1-5",
                    holds=False,
                    checked=((g * n + h) * n + k) * n + l + 1,
                    witness=witness,
                    detail=f"average {averages[counts]} differs from {lhs} at {witness}",
                )
    return IdentityCheck(identity="averaged 1-5", holds=True, checked=n**4)


def eval_phase(pi: FourCochain, g: int, h: int, k: int, l: int, sign: int = 1) -> Cyclotomic:
    """z^(sign * pi(g,h,k,l))."""
    if sign not in (1, -1):
        raise ValueError(f"sign must be +1 or -1, got {sign}")
    return Cyclotomic.root(pi.N, sign * pi.value(g, h, k, l))


def random_three_cochain(group: FiniteGroup, N: int, seed: int, normalized: bool = True) -> ThreeCochain:
    rng = Random(seed)
    entries = {}
    for key in product(range(group.order), repeat=3):
        if normalized and 0 in key:
            continue
        entries[key] = rng.randrange(N)
    return ThreeCochain(group=group, N=N, entries=entries, normalized=normalized)


# -------------- files --------------
def _load(text: str, group: FiniteGroup, header: str, arity: int) -> tuple[int, dict]:
    records = list(iter_records(text))
    if not records or records[0][1][0] != header or len(records[0][1]) != 2:
        raise CochainParseError(f"File must start with '{header} <N>'", line=records[0][0] if records else None)
    try:
        N = int(records[0][1][1])
    except ValueError as e:
        raise CochainParseError(f"Bad coefficient order: {records[0][1][1]}", line=records[0][0]) from e
    if N < 1:
        raise CochainParseError(f"Coefficient order must be positive, got {N}", line=records[0][0])
    entries: dict[tuple[int, ...], int] = {}
    for line, tokens in records[1:]:
        if tokens[0] != "entry" or len(tokens) != arity + 2:
            raise CochainParseError(f"Expected 'entry' with {arity} indices and an exponent", line=line)
        try:
            values = [int(tok) for tok in tokens[1:]]
        except ValueError as e:
            raise CochainParseError(f"Non-integer token: {e}", line=line) from e
        key = tuple(values[:arity])
        if any(not 0 <= g < group.order for g in key):
            raise CochainParseError(f"Element index out of range in {key}", line=line)
        if key in entries:
            raise CochainParseError(f"Duplicate entry {key}", line=line)
        entries[key] = values[arity]
    return N, entries


def load_four_cochain(text: str, group: FiniteGroup) -> FourCochain:
    N, entries = _load(text, group, "cocycle", 4)
    return FourCochain(group=group, N=N, entries=entries)


def load_three_cochain(text: str, group: FiniteGroup) -> ThreeCochain:
    N, entries = _load(text, group, "cochain3", 3)
    return ThreeCochain(group=group, N=N, entries=entries)


def dump_cochain(cochain: ThreeCochain | FourCochain) -> str:
    header = "cocycle" if isinstance(cochain, FourCochain) else "cochain3"
    lines = [f"{header} {cochain.N}"]
    for key in sorted(cochain.entries):
        lines.append("entry " + " ".join(str(v) for v in (*key, cochain.entries[key])))
    return "\n".join(lines) + "\n"
