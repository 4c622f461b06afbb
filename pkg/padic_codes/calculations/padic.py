"""Exact p-adic scalar and vector arithmetic over Q_p^d.

Scalars are exact rationals tagged with a prime. Absolute values are kept
symbolically as ``p^(-e)`` so every comparison reduces to integer arithmetic.

Conventions: ``v_p(0) = +inf`` and ``|0|_p = 0``.

Nondegeneracy of the inner product (``<x, y> = 0`` for all ``y`` forces
``x = 0``) holds for the standard form on Q_p^d but cannot be checked on
finite data, so it has no operation here.
"""

from __future__ import annotations

import functools
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence, Union

import sympy

from padic_codes.core.errors import (
    DimensionMismatchError,
    InvalidPrimeError,
    PrimeMismatchError,
)

Rational = Union[int, Fraction]

_RATIONAL_RE = re.compile(r"^\s*([+-]?\d+)(?:\s*/\s*(\d+))?\s*$")


class PlusInfinity:
    """The valuation of zero; greater than every integer."""

    _instance: "PlusInfinity | None" = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "PlusInfinity"

    def __str__(self):
        return "inf"

    def __eq__(self, other):
        return other is self

    def __hash__(self):
        return hash("PlusInfinity")

    def __lt__(self, other):
        return False

    def __le__(self, other):
        return other is self

    def __gt__(self, other):
        return other is not self

    def __ge__(self, other):
        return True

    def __add__(self, other):
        return self

    __radd__ = __add__

    def __neg__(self):
        raise ArithmeticError("-inf is not an extended valuation")


PLUS_INFINITY = PlusInfinity()

ExtendedInt = Union[int, PlusInfinity]


def parse_rational(text: str) -> Fraction:
    """Parse ``"a/b"`` or ``"a"`` into a canonical Fraction."""
    match = _RATIONAL_RE.match(text)
    if match is None:
        raise ValueError(f"not a rational literal: {text!r}")
    num = int(match.group(1))
    den = int(match.group(2)) if match.group(2) is not None else 1
    if den == 0:
        raise ValueError(f"zero denominator in {text!r}")
    return Fraction(num, den)


def format_rational(value: Rational) -> str:
    """Render an exact rational as ``a/b`` (or ``a`` when integral)."""
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


@dataclass(frozen=True)
class Prime:
    """A rational prime, checked at construction."""

    value: int

    def __post_init__(self):
        if not isinstance(self.value, int) or isinstance(self.value, bool):
            raise InvalidPrimeError(f"prime must be an integer, got {self.value!r}")
        if self.value < 2 or not sympy.isprime(self.value):
            raise InvalidPrimeError(f"{self.value} is not prime")

    def __int__(self):
        return self.value

    def __str__(self):
        return str(self.value)

    @property
    def is_odd(self) -> bool:
        return self.value != 2


def as_prime(p: "Prime | int") -> Prime:
    return p if isinstance(p, Prime) else Prime(p)


def _int_valuation(n: int, p: int) -> int:
    n = abs(n)
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def valuation(q: Rational, p: "Prime | int") -> ExtendedInt:
    """Return ``v_p(q)``: the exponent of p in q, ``PLUS_INFINITY`` for zero."""
    p = int(as_prime(p))
    q = Fraction(q)
    if q == 0:
        return PLUS_INFINITY
    return _int_valuation(q.numerator, p) - _int_valuation(q.denominator, p)


@functools.total_ordering
@dataclass(frozen=True)
class PAdicAbs:
    """The p-adic absolute value ``p^(-exponent)``; exponent ``inf`` is ``|0|``."""

    prime: int
    exponent: ExtendedInt

    @classmethod
    def zero(cls, p: "Prime | int") -> "PAdicAbs":
        return cls(int(p), PLUS_INFINITY)

    @classmethod
    def power(cls, p: "Prime | int", exponent: int) -> "PAdicAbs":
        """The value ``p^(-exponent)``."""
        return cls(int(p), exponent)

    @property
    def is_zero(self) -> bool:
        return self.exponent is PLUS_INFINITY

    def _check(self, other: "PAdicAbs"):
        if not isinstance(other, PAdicAbs):
            return NotImplemented
        if other.prime != self.prime:
            raise PrimeMismatchError(
                f"cannot compare |.|_{self.prime} with |.|_{other.prime}"
            )
        return None

    def __lt__(self, other: "PAdicAbs") -> bool:
        if self._check(other) is NotImplemented:
            return NotImplemented
        # larger exponent means smaller value
        return self.exponent > other.exponent

    def __mul__(self, other: "PAdicAbs") -> "PAdicAbs":
        if self._check(other) is NotImplemented:
            return NotImplemented
        if self.is_zero or other.is_zero:
            return PAdicAbs.zero(self.prime)
        return PAdicAbs(self.prime, self.exponent + other.exponent)

    def squared(self) -> "PAdicAbs":
        return self * self

    def to_fraction(self) -> Fraction:
        if self.is_zero:
            return Fraction(0)
        return Fraction(self.prime) ** (-self.exponent)

    def ge_rational(self, bound: Rational) -> bool:
        """Exact test of ``p^(-e) >= bound`` in integer arithmetic."""
        bound = Fraction(bound)
        if self.is_zero:
            return bound <= 0
        if bound <= 0:
            return True
        e = self.exponent
        if e >= 0:
            return self.prime**e * bound.numerator <= bound.denominator
        return bound.numerator <= self.prime ** (-e) * bound.denominator

    def le_rational(self, bound: Rational) -> bool:
        """Exact test of ``p^(-e) <= bound``."""
        bound = Fraction(bound)
        return not self.ge_rational(bound) or self.to_fraction() == bound

    def label(self) -> str:
        """Text form used by certificate files: ``0`` or ``p^-e``."""
        if self.is_zero:
            return "0"
        return f"{self.prime}^{-self.exponent}"

    def __str__(self):
        return format_rational(self.to_fraction())


def abs_p(q: Rational, p: "Prime | int") -> PAdicAbs:
    """Return ``|q|_p = p^(-v_p(q))`` with ``|0|_p = 0``."""
    p = as_prime(p)
    return PAdicAbs(int(p), valuation(q, p))


def parse_abs_label(text: str, p: "Prime | int | None" = None) -> PAdicAbs:
    """Inverse of :meth:`PAdicAbs.label`; ``p`` must match when given."""
    text = text.strip()
    if text == "0":
        if p is None:
            raise ValueError("the label 0 needs a known prime")
        return PAdicAbs.zero(p)
    match = re.match(r"^(\d+)\^([+-]?\d+)$", text)
    if match is None:
        raise ValueError(f"not an absolute-value label: {text!r}")
    base = int(match.group(1))
    as_prime(base)
    if p is not None and base != int(p):
        raise PrimeMismatchError(f"label {text!r} does not use p = {int(p)}")
    return PAdicAbs(base, -int(match.group(2)))


@dataclass(frozen=True)
class PAdicScalar:
    """An exact rational viewed as an element of Q_p."""

    value: Fraction
    prime: Prime

    def __post_init__(self):
        if not isinstance(self.value, Fraction):
            object.__setattr__(self, "value", Fraction(self.value))

    @classmethod
    def of(cls, value: "Rational | str", prime: "Prime | int") -> "PAdicScalar":
        if isinstance(value, str):
            value = parse_rational(value)
        return cls(Fraction(value), as_prime(prime))

    @property
    def num(self) -> int:
        return self.value.numerator

    @property
    def den(self) -> int:
        return self.value.denominator

    def _coerce(self, other) -> Fraction:
        if isinstance(other, PAdicScalar):
            if other.prime != self.prime:
                raise PrimeMismatchError(
                    f"p = {self.prime} and p = {other.prime} do not mix"
                )
            return other.value
        if isinstance(other, (int, Fraction)):
            return Fraction(other)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return PAdicScalar(self.value + o, self.prime)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return PAdicScalar(self.value - o, self.prime)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return PAdicScalar(o - self.value, self.prime)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return PAdicScalar(self.value * o, self.prime)

    __rmul__ = __mul__

    def __neg__(self):
        return PAdicScalar(-self.value, self.prime)

    def valuation(self) -> ExtendedInt:
        return valuation(self.value, self.prime)

    def abs(self) -> PAdicAbs:
        return abs_p(self.value, self.prime)

    def __str__(self):
        return format_rational(self.value)


@dataclass(frozen=True)
class PAdicVector:
    """A vector of Q_p^d; every entry carries the same prime."""

    prime: Prime
    entries: tuple[PAdicScalar, ...]

    def __post_init__(self):
        if len(self.entries) < 1:
            raise DimensionMismatchError("vectors need at least one entry")
        for entry in self.entries:
            if entry.prime != self.prime:
                raise PrimeMismatchError(
                    f"entry {entry} has p = {entry.prime}, vector has p = {self.prime}"
                )

    @classmethod
    def of(
        cls, values: Iterable["Rational | str"], prime: "Prime | int"
    ) -> "PAdicVector":
        prime = as_prime(prime)
        return cls(prime, tuple(PAdicScalar.of(v, prime) for v in values))

    @property
    def dim(self) -> int:
        return len(self.entries)

    @property
    def values(self) -> tuple[Fraction, ...]:
        return tuple(e.value for e in self.entries)

    def _compatible(self, other: "PAdicVector"):
        if other.prime != self.prime:
            raise PrimeMismatchError(
                f"p = {self.prime} and p = {other.prime} do not mix"
            )
        if other.dim != self.dim:
            raise DimensionMismatchError(
                f"dimensions {self.dim} and {other.dim} differ"
            )

    def __add__(self, other: "PAdicVector") -> "PAdicVector":
        self._compatible(other)
        return PAdicVector(
            self.prime, tuple(a + b for a, b in zip(self.entries, other.entries))
        )

    def __sub__(self, other: "PAdicVector") -> "PAdicVector":
        self._compatible(other)
        return PAdicVector(
            self.prime, tuple(a - b for a, b in zip(self.entries, other.entries))
        )

    def scale(self, alpha: "Rational | PAdicScalar") -> "PAdicVector":
        return PAdicVector(self.prime, tuple(e * alpha for e in self.entries))

    def __str__(self):
        return " ".join(str(e) for e in self.entries)


def padic_inner_product(u: PAdicVector, v: PAdicVector) -> PAdicScalar:
    """Standard form ``<u, v> = sum_j u_j v_j`` on Q_p^d."""
    u._compatible(v)
    total = Fraction(0)
    for a, b in zip(u.values, v.values):
        total += a * b
    return PAdicScalar(total, u.prime)


def sup_norm(v: PAdicVector) -> PAdicAbs:
    """``||v|| = max_j |v_j|_p``."""
    return max(e.abs() for e in v.entries)


def cauchy_schwarz_holds(u: PAdicVector, v: PAdicVector) -> bool:
    """Check ``|<u, v>| <= ||u|| ||v||`` exactly as powers of p."""
    return padic_inner_product(u, v).abs() <= sup_norm(u) * sup_norm(v)


def gram_values(vectors: Sequence[PAdicVector]) -> list[list[Fraction]]:
    """All pairwise inner products as exact rationals."""
    return [[padic_inner_product(a, b).value for b in vectors] for a in vectors]
