"""p-adic spherical codes and their validation.

A code is a finite list of vectors in Q_p^d with a separation angle. The
default variant checks the three conditions of a p-adic (d, n, theta) code:

    (i)   ||tau_j|| = 1
    (ii)  <tau_j, tau_j> = 1
    (iii) |2 - 2<tau_j, tau_k>| >= 2(1 - cos theta)   for j != k   (PE)

The norm form ``||tau_j - tau_k||^2 >= 2(1 - cos theta)`` (PN) may replace
(iii), and (i) or (ii) may be switched off.
"""

from __future__ import annotations

import enum
import logging
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import mpmath

from padic_codes.calculations.padic import (
    PLUS_INFINITY,
    PAdicAbs,
    PAdicVector,
    Prime,
    abs_p,
    as_prime,
    format_rational,
    padic_inner_product,
    sup_norm,
    valuation,
)
from padic_codes.core.config import settings
from padic_codes.core.errors import DimensionMismatchError, PrimeMismatchError

logger = logging.getLogger(__name__)


class Verdict(str, enum.Enum):
    PASS = "pass"
    FAIL = "fail"
    INDETERMINATE = "indeterminate"
    SKIPPED = "skipped"


@dataclass(frozen=True)
class SeparationSpec:
    """Separation angle, exact (rational cos theta) or approximate (theta in radians).

    In exact mode the threshold ``b = 2(1 - cos theta)`` is an exact rational in
    [0, 4]. In approximate mode it is evaluated with mpmath and comparisons
    closer than ``settings.approx_tolerance`` to it are Indeterminate.
    """

    cos_theta: Fraction | None = None
    theta: str | None = None

    def __post_init__(self):
        if (self.cos_theta is None) == (self.theta is None):
            raise ValueError("give exactly one of cos_theta or theta")
        if self.cos_theta is not None:
            cos_theta = Fraction(self.cos_theta)
            if not -1 <= cos_theta <= 1:
                raise ValueError(f"cos theta = {cos_theta} lies outside [-1, 1]")
            object.__setattr__(self, "cos_theta", cos_theta)
        else:
            mpmath.mpf(self.theta)

    @classmethod
    def kissing(cls) -> "SeparationSpec":
        """theta = pi/3: cos theta = 1/2, b = 1."""
        return cls(cos_theta=Fraction(1, 2))

    @property
    def exact(self) -> bool:
        return self.cos_theta is not None

    @property
    def bound(self) -> Fraction:
        """Exact threshold ``b = 2(1 - cos theta)``."""
        if not self.exact:
            raise ValueError("approximate separations have no exact threshold")
        return 2 * (1 - self.cos_theta)

    def approx_bound(self) -> mpmath.mpf:
        with mpmath.workdps(settings.approx_dps):
            if self.exact:
                return mpmath.mpf(self.bound.numerator) / self.bound.denominator
            return 2 * (1 - mpmath.cos(mpmath.mpf(self.theta)))

    def admits(self, value: PAdicAbs) -> Verdict:
        """Decide ``value >= b``."""
        if self.exact:
            return Verdict.PASS if value.ge_rational(self.bound) else Verdict.FAIL
        with mpmath.workdps(settings.approx_dps):
            b = self.approx_bound()
            if value.is_zero:
                v = mpmath.mpf(0)
            else:
                v = mpmath.power(value.prime, -value.exponent)
            diff = v - b
            if abs(diff) <= mpmath.mpf(settings.approx_tolerance):
                return Verdict.INDETERMINATE
            return Verdict.PASS if diff > 0 else Verdict.FAIL

    def describe(self) -> str:
        if self.exact:
            return f"cos_theta={format_rational(self.cos_theta)}"
        return f"theta={self.theta}"


@dataclass(frozen=True)
class CodeVariant:
    """Which conditions validation enforces.

    ``self_product_precision = K`` relaxes (ii) to ``<tau, tau> = 1 (mod p^K)``;
    used for Hensel-lifted witnesses whose exact lift is not rational.
    """

    use_pe: bool = True
    require_unit_norm: bool = True
    require_unit_self_product: bool = True
    self_product_precision: int | None = None

    def with_precision(self, precision: int | None) -> "CodeVariant":
        return CodeVariant(
            self.use_pe,
            self.require_unit_norm,
            self.require_unit_self_product,
            precision,
        )


@dataclass(frozen=True)
class PAdicCode:
    prime: Prime
    dim: int
    vectors: tuple[PAdicVector, ...]
    spec: SeparationSpec
    variant: CodeVariant = field(default_factory=CodeVariant)

    def __post_init__(self):
        object.__setattr__(self, "prime", as_prime(self.prime))
        object.__setattr__(self, "vectors", tuple(self.vectors))
        if not self.vectors:
            raise ValueError("a code needs at least one vector")
        for index, vector in enumerate(self.vectors, start=1):
            if vector.prime != self.prime:
                raise PrimeMismatchError(
                    f"vector {index} has p = {vector.prime}, code has p = {self.prime}"
                )
            if vector.dim != self.dim:
                raise DimensionMismatchError(
                    f"vector {index} has dimension {vector.dim}, code has {self.dim}"
                )

    @property
    def size(self) -> int:
        return len(self.vectors)

    def permuted(self, order: Sequence[int]) -> "PAdicCode":
        return PAdicCode(
            self.prime,
            self.dim,
            tuple(self.vectors[i] for i in order),
            self.spec,
            self.variant,
        )


@dataclass(frozen=True)
class Violation:
    condition: str
    j: int
    k: int | None
    value: str
    verdict: Verdict = Verdict.FAIL


@dataclass
class ValidationReport:
    """Outcome of :func:`validate_code`; indices are 1-based."""

    valid: bool
    conditions: dict[str, Verdict]
    violations: list[Violation]

    @property
    def indeterminate(self) -> bool:
        return any(v is Verdict.INDETERMINATE for v in self.conditions.values())


def _fold(verdicts: list[Verdict]) -> Verdict:
    if Verdict.FAIL in verdicts:
        return Verdict.FAIL
    if Verdict.INDETERMINATE in verdicts:
        return Verdict.INDETERMINATE
    return Verdict.PASS


def _self_product_ok(code: PAdicCode, vector: PAdicVector) -> tuple[bool, str]:
    t = padic_inner_product(vector, vector).value
    precision = code.variant.self_product_precision
    if precision is None:
        return t == 1, format_rational(t)
    return valuation(t - 1, code.prime) >= precision, format_rational(t)


def pair_value(code: PAdicCode, j: int, k: int) -> PAdicAbs:
    """``|2 - 2<tau_j, tau_k>|_p`` for 0-based indices."""
    t = padic_inner_product(code.vectors[j], code.vectors[k]).value
    return abs_p(2 - 2 * t, code.prime)


def validate_code(code: PAdicCode) -> ValidationReport:
    """Check every enabled condition exactly and list every violation.

    Args:
        code: The code; its variant decides which conditions are enforced.

    Returns:
        ValidationReport with a verdict per condition and every violating
        vector or pair.
    """
    conditions: dict[str, Verdict] = {}
    violations: list[Violation] = []
    variant = code.variant

    if variant.require_unit_norm:
        found = []
        for j, vector in enumerate(code.vectors, start=1):
            norm = sup_norm(vector)
            if norm.exponent != 0:
                violations.append(Violation("i", j, None, str(norm)))
                found.append(Verdict.FAIL)
        conditions["i"] = _fold(found)
    else:
        conditions["i"] = Verdict.SKIPPED

    if variant.require_unit_self_product:
        found = []
        for j, vector in enumerate(code.vectors, start=1):
            ok, shown = _self_product_ok(code, vector)
            if not ok:
                violations.append(Violation("ii", j, None, shown))
                found.append(Verdict.FAIL)
        conditions["ii"] = _fold(found)
    else:
        conditions["ii"] = Verdict.SKIPPED

    found = []
    for j in range(code.size):
        for k in range(j + 1, code.size):
            if variant.use_pe:
                value = pair_value(code, j, k)
            else:
                value = sup_norm(code.vectors[j] - code.vectors[k]).squared()
            verdict = code.spec.admits(value)
            if verdict is not Verdict.PASS:
                violations.append(Violation("iii", j + 1, k + 1, str(value), verdict))
                found.append(verdict)
    conditions["iii"] = _fold(found)

    valid = all(v in (Verdict.PASS, Verdict.SKIPPED) for v in conditions.values())
    logger.debug(
        "validated n=%d p=%s: %s", code.size, code.prime, dict(conditions)
    )
    return ValidationReport(valid=valid, conditions=conditions, violations=violations)


def pair_value_multiset(code: PAdicCode) -> Counter[PAdicAbs]:
    """All n^2 values ``|2 - 2<tau_j, tau_k>|`` with multiplicity.

    For codes checked to a finite self-product precision the diagonal is
    reported as 0, the value of the exact code the Hensel lift guarantees.
    """
    values: Counter[PAdicAbs] = Counter()
    approximate_diagonal = code.variant.self_product_precision is not None
    for j in range(code.size):
        for k in range(code.size):
            if j == k and approximate_diagonal:
                values[PAdicAbs.zero(code.prime)] += 1
            else:
                values[pair_value(code, j, k)] += 1
    return values


def off_diagonal_values(code: PAdicCode) -> Counter[PAdicAbs]:
    """Pair values over ``j != k`` with multiplicity."""
    values: Counter[PAdicAbs] = Counter()
    for j in range(code.size):
        for k in range(code.size):
            if j != k:
                values[pair_value(code, j, k)] += 1
    return values


class LevelStatus(str, enum.Enum):
    FINITE = "finite"
    UNBOUNDED = "unbounded"
    INFEASIBLE = "infeasible"


@dataclass(frozen=True)
class EffectiveLevel:
    """Valuation form of the separation threshold.

    FINITE with level m: admissible pairs are exactly those with
    ``v_p(1 - <x, y>) <= m``. UNBOUNDED (b = 0): every pair is admissible.
    INFEASIBLE: no two unit vectors can be separated.
    """

    status: LevelStatus
    level: int | None = None

    def __str__(self):
        if self.status is LevelStatus.FINITE:
            return str(self.level)
        return self.status.value


def effective_level(spec: SeparationSpec, p: "Prime | int") -> EffectiveLevel:
    """Largest m >= 0 with ``|2|_p * p^(-m) >= b``.

    For odd p the attainable values of ``|2 - 2t|`` over Z_p are ``p^(-k)``,
    k >= 0, so b > 1 is infeasible. For p = 2 the factor ``|2|_2 = 1/2``
    shifts every value down one step and b > 1/2 is infeasible.
    """
    if not spec.exact:
        raise ValueError("effective_level needs an exact separation")
    p = as_prime(p)
    b = spec.bound
    if b == 0:
        return EffectiveLevel(LevelStatus.UNBOUNDED, None)
    # scale = |2|_p: values are scale * p^(-m)
    scale = Fraction(1) if p.is_odd else Fraction(1, 2)
    if b > scale:
        return EffectiveLevel(LevelStatus.INFEASIBLE, None)
    m = 0
    while scale / Fraction(p.value) ** (m + 1) >= b:
        m += 1
    return EffectiveLevel(LevelStatus.FINITE, m)


def level_admissible(t: Fraction, p: "Prime | int", level: EffectiveLevel) -> bool:
    """Pair test in valuation form for an inner product t in Z_p."""
    if level.status is LevelStatus.UNBOUNDED:
        return True
    if level.status is LevelStatus.INFEASIBLE:
        return False
    v = valuation(1 - Fraction(t), p)
    return v is not PLUS_INFINITY and v <= level.level
