"""
Exact arithmetic in the cyclotomic field Q(z) with z a primitive N-th root of unity.

An element is stored densely as the tuple of its rational coefficients in the basis 1, z, ..., z^(phi(N)-1), i.e. the
remainder of a polynomial in z modulo the N-th cyclotomic polynomial. Two elements are equal iff their reduced
coefficient tuples agree (after lifting to a common field).
"""

from __future__ import annotations

import math
import re
from collections.abc import Iterable, Sequence
from fractions import Fraction
from functools import lru_cache

from sympy import QQ, Poly, Rational, divisors, symbols

from ..core.exceptions.algebra_exceptions import (
    CyclotomicParseError,
    CyclotomicZeroDivisionError,
    FieldMismatchError,
)

x = symbols("x")

Scalar = int | Fraction


@lru_cache(maxsize=None)
def _cyclotomic_poly(n: int) -> Poly:
    numerator = Poly(x**n - 1, x, domain=QQ)
    for d in divisors(n):
        if d < n:
            numerator = numerator.exquo(_cyclotomic_poly(d))
    return numerator


@lru_cache(maxsize=None)
def cyclotomic_polynomial(n: int) -> tuple[int, ...]:
    """The n-th cyclotomic polynomial as integer coefficients, constant term first.

    Computed by exact division of x^n - 1 by the cyclotomic polynomials of the proper divisors of n.

    >>> cyclotomic_polynomial(6)
    (1, -1, 1)
    """
    if n < 1:
        raise ValueError(f"Cyclotomic polynomial needs n >= 1, got {n}")
    coeffs = _cyclotomic_poly(n).all_coeffs()
    return tuple(int(c) for c in reversed(coeffs))


def _as_fraction(value: object) -> Fraction:
    return Fraction(str(value))


@lru_cache(maxsize=None)
def euler_phi(n: int) -> int:
    return len(cyclotomic_polynomial(n)) - 1


def _reduce(n: int, coeffs: Sequence[Fraction]) -> tuple[Fraction, ...]:
    modulus = cyclotomic_polynomial(n)
    degree = len(modulus) - 1
    work = list(coeffs)
    # modulus is monic, so each leading term is cancelled by one shifted subtraction
    for top in range(len(work) - 1, degree - 1, -1):
        lead = work[top]
        if lead:
            shift = top - degree
            for i, m in enumerate(modulus):
                if m:
                    work[shift + i] -= lead * m
    work = work[:degree] + [Fraction(0)] * (degree - len(work))
    return tuple(work)


class Cyclotomic:
    """An exact element of the N-th cyclotomic field."""

    __slots__ = ("N", "coeffs")

    N: int
    coeffs: tuple[Fraction, ...]

    def __init__(self, N: int, coeffs: Iterable[Scalar] = ()) -> None:
        if N < 1:
            raise ValueError(f"Root order must be positive, got {N}")
        values = [Fraction(c) for c in coeffs]
        object.__setattr__(self, "N", N)
        object.__setattr__(self, "coeffs", _reduce(N, values))

    def __setattr__(self, name: str, value: object) -> None:
        raise AttributeError("Cyclotomic values are immutable")

    def __reduce__(self) -> tuple:
        return (Cyclotomic, (self.N, self.coeffs))

    # -------------- constructors --------------
    @classmethod
    def from_rational(cls, value: Scalar, N: int = 1) -> Cyclotomic:
        return cls(N, [value])

    @classmethod
    def zero(cls, N: int = 1) -> Cyclotomic:
        return cls(N)

    @classmethod
    def one(cls, N: int = 1) -> Cyclotomic:
        return cls(N, [1])

    @classmethod
    def root(cls, N: int, k: int = 1) -> Cyclotomic:
        """z^k for the canonical generator z of the N-th cyclotomic field."""
        power = k % N
        return cls(N, [0] * power + [1])

    @classmethod
    def from_power_counts(cls, N: int, counts: Sequence[Scalar]) -> Cyclotomic:
        """Sum of counts[k] * z^k over k; len(counts) may be anything."""
        folded = [Fraction(0)] * N
        for k, c in enumerate(counts):
            folded[k % N] += c
        return cls(N, folded)

    # -------------- field structure --------------
    def embed(self, M: int) -> Cyclotomic:
        """Image under Q(z_N) -> Q(z_M), z_N -> z_M^(M/N)."""
        if M == self.N:
            return self
        if M % self.N:
            raise FieldMismatchError(f"Cannot embed N={self.N} into N={M}")
        step = M // self.N
        lifted = [Fraction(0)] * ((len(self.coeffs) - 1) * step + 1 if self.coeffs else 0)
        for k, c in enumerate(self.coeffs):
            lifted[k * step] = c
        return Cyclotomic(M, lifted)

    def _align(self, other: object) -> tuple[Cyclotomic, Cyclotomic]:
        if isinstance(other, (int, Fraction)):
            return self, Cyclotomic.from_rational(other, self.N)
        if not isinstance(other, Cyclotomic):
            raise TypeError(f"Unsupported operand: {type(other).__name__}")
        if other.N == self.N:
            return self, other
        common = math.lcm(self.N, other.N)
        return self.embed(common), other.embed(common)

    def __add__(self, other: object) -> Cyclotomic:
        a, b = self._align(other)
        return Cyclotomic(a.N, [p + q for p, q in zip(a.coeffs, b.coeffs, strict=True)])

    __radd__ = __add__

    def __neg__(self) -> Cyclotomic:
        return Cyclotomic(self.N, [-c for c in self.coeffs])

    def __sub__(self, other: object) -> Cyclotomic:
        a, b = self._align(other)
        return a + (-b)

    def __rsub__(self, other: object) -> Cyclotomic:
        return (-self) + other

    def __mul__(self, other: object) -> Cyclotomic:
        if isinstance(other, (int, Fraction)):
            return Cyclotomic(self.N, [c * other for c in self.coeffs])
        a, b = self._align(other)
        product = [Fraction(0)] * max(len(a.coeffs) + len(b.coeffs) - 1, 0)
        for i, p in enumerate(a.coeffs):
            if p:
                for j, q in enumerate(b.coeffs):
                    if q:
                        product[i + j] += p * q
        return Cyclotomic(a.N, product)

    __rmul__ = __mul__

    def inverse(self) -> Cyclotomic:
        """Multiplicative inverse via the extended Euclidean identity u*a + w*Phi_N = 1 over Q."""
        if self.is_zero():
            raise CyclotomicZeroDivisionError()
        if self.is_rational():
            return Cyclotomic.from_rational(1 / self.coeffs[0], self.N)
        a = Poly([Rational(c.numerator, c.denominator) for c in reversed(self.coeffs)], x, domain=QQ)
        u, _, g = a.gcdex(_cyclotomic_poly(self.N))
        lead = _as_fraction(g.LC())
        coeffs = [_as_fraction(c) / lead for c in reversed(u.all_coeffs())]
        return Cyclotomic(self.N, coeffs)

    def __truediv__(self, other: object) -> Cyclotomic:
        if isinstance(other, (int, Fraction)):
            if other == 0:
                raise CyclotomicZeroDivisionError()
            return Cyclotomic(self.N, [c / other for c in self.coeffs])
        a, b = self._align(other)
        return a * b.inverse()

    def __rtruediv__(self, other: object) -> Cyclotomic:
        return self.inverse() * other

    def __pow__(self, exponent: int) -> Cyclotomic:
        if exponent < 0:
            return self.inverse() ** (-exponent)
        result = Cyclotomic.one(self.N)
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    def conjugate(self) -> Cyclotomic:
        """Image under z -> z^-1 (complex conjugation)."""
        counts = [Fraction(0)] * self.N
        for k, c in enumerate(self.coeffs):
            counts[(-k) % self.N] += c
        return Cyclotomic(self.N, counts)

    # -------------- predicates --------------
    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def is_rational(self) -> bool:
        return not any(self.coeffs[1:])

    def rational_part(self) -> Fraction:
        return self.coeffs[0] if self.coeffs else Fraction(0)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (int, Fraction)):
            return self.is_rational() and self.rational_part() == other
        if not isinstance(other, Cyclotomic):
            return NotImplemented
        a, b = self._align(other)
        return a.coeffs == b.coeffs

    __hash__ = None  # type: ignore[assignment]

    def __bool__(self) -> bool:
        return not self.is_zero()

    # -------------- printing --------------
    def format_canonical(self) -> str:
        """Report form: ``1/2 [N=1]`` or ``(1/2) + (-1)*z^1 [N=4]``."""
        terms = [(k, c) for k, c in enumerate(self.coeffs) if c]
        if not terms:
            body = "0"
        elif len(terms) == 1 and terms[0][0] == 0:
            body = str(terms[0][1])
        else:
            body = " + ".join(f"({c})" if k == 0 else f"({c})*z^{k}" for k, c in terms)
        return f"{body} [N={self.N}]"

    def format_literal(self) -> str:
        """Whitespace-free file form, e.g. ``1/2+-1*z^1``."""
        terms = [(k, c) for k, c in enumerate(self.coeffs) if c]
        if not terms:
            return "0"
        return "+".join(str(c) if k == 0 else f"{c}*z^{k}" for k, c in terms)

    def __str__(self) -> str:
        return self.format_canonical()

    def __repr__(self) -> str:
        return f"Cyclotomic({self.format_canonical()!r})"


_TERM = re.compile(r"^(?P<sign>[+-]?)(?P<num>\d+(?:/\d+)?)?(?P<z>\*?z(?:\^(?P<power>-?\d+))?)?$")


def parse_cyclotomic(text: str, N: int) -> Cyclotomic:
    """Parse a literal such as ``1/2+-1*z^1`` or the canonical ``(1/2) + (-1)*z^1 [N=4]``.

    A trailing ``[N=..]`` tag must agree with ``N``.
    """
    body = text.strip()
    tag = re.search(r"\[N=(\d+)\]\s*$", body)
    if tag:
        if int(tag.group(1)) != N:
            raise FieldMismatchError(f"Literal {text!r} is tagged N={tag.group(1)}, expected N={N}")
        body = body[: tag.start()]
    counts: list[Fraction] = [Fraction(0)] * N
    for raw in body.replace(" ", "").split("+"):
        term = raw.replace("(", "").replace(")", "")
        if not term:
            continue
        match = _TERM.match(term)
        if match is None or not (match.group("num") or match.group("z")):
            raise CyclotomicParseError(f"Bad cyclotomic term {raw!r} in {text!r}")
        try:
            coeff = Fraction(match.group("num")) if match.group("num") else Fraction(1)
        except ZeroDivisionError as e:
            raise CyclotomicParseError(f"Zero denominator in term {raw!r} of {text!r}") from e
        if match.group("sign") == "-":
            coeff = -coeff
        power = 0
        if match.group("z"):
            power = int(match.group("power")) if match.group("power") is not None else 1
        counts[power % N] += coeff
    return Cyclotomic(N, counts)
