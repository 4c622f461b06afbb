"""Real spherical codes: Delsarte and Pfender bounds, (SCI) validation.

Real code entries are exact sympy numbers (rationals or radicals such as
``sqrt(3)/2``). Inner products are simplified before they are compared or
used as keys of a certificate table.
"""

from __future__ import annotations

import logging
import math
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence

import mpmath
import sympy as sp

from padic_codes.calculations.gegenbauer import (
    GegenbauerExpansion,
    expand_in_gegenbauer,
    poly_from_coefficients,
    to_fraction,
)
from padic_codes.calculations.sturm import is_nonpositive_on
from padic_codes.core.config import settings
from padic_codes.core.errors import (
    CertificateError,
    ConsistencyError,
    DimensionMismatchError,
)

logger = logging.getLogger(__name__)


def canonical(expr) -> sp.Expr:
    """Normal form used for comparisons and table lookups."""
    return sp.radsimp(sp.expand(sp.sympify(expr)))


def _le(expr: sp.Expr, bound) -> bool:
    diff = canonical(expr - sp.Rational(Fraction(bound).numerator, Fraction(bound).denominator))
    try:
        return bool(diff <= 0)
    except TypeError as e:
        raise ValueError(f"cannot decide the sign of {diff}") from e


def _check_cos_theta(cos_theta) -> Fraction:
    cos_theta = Fraction(cos_theta)
    if not -1 <= cos_theta <= 1:
        raise ValueError(f"cos theta = {cos_theta} lies outside [-1, 1]")
    return cos_theta


@dataclass(frozen=True)
class RealCode:
    """Unit vectors in R^d with a rational separation cos theta."""

    dim: int
    vectors: tuple[tuple[sp.Expr, ...], ...]
    cos_theta: Fraction

    def __post_init__(self):
        object.__setattr__(self, "cos_theta", _check_cos_theta(self.cos_theta))
        vectors = tuple(tuple(sp.sympify(x) for x in v) for v in self.vectors)
        object.__setattr__(self, "vectors", vectors)
        if not vectors:
            raise ValueError("a code needs at least one vector")
        for index, vector in enumerate(vectors, start=1):
            if len(vector) != self.dim:
                raise DimensionMismatchError(
                    f"vector {index} has dimension {len(vector)}, code has {self.dim}"
                )
            norm = canonical(sum(x * x for x in vector))
            if norm == 1:
                continue
            if norm.is_Rational:
                raise ValueError(f"vector {index} has squared norm {norm}, not 1")
            with mpmath.workdps(settings.approx_dps):
                gap = abs(mpmath.mpf(str(sp.N(norm - 1, settings.approx_dps))))
                if gap > mpmath.mpf(settings.approx_tolerance):
                    raise ValueError(f"vector {index} is not a unit vector")

    @property
    def size(self) -> int:
        return len(self.vectors)

    def inner(self, j: int, k: int) -> sp.Expr:
        return canonical(
            sum(a * b for a, b in zip(self.vectors[j], self.vectors[k]))
        )

    def gram(self) -> list[list[sp.Expr]]:
        return [[self.inner(j, k) for k in range(self.size)] for j in range(self.size)]


@dataclass
class RealValidationReport:
    """(SCI) ``<tj, tk> <= cos theta`` and (SCN) ``|tj - tk|^2 >= 2(1 - cos theta)``."""

    sci_ok: bool
    scn_ok: bool
    violations: list[tuple[int, int, str]] = field(default_factory=list)

    @property
    def agree(self) -> bool:
        return self.sci_ok == self.scn_ok


def validate_real_code(code: RealCode) -> RealValidationReport:
    b = 2 * (1 - code.cos_theta)
    sci_ok = scn_ok = True
    violations = []
    for j in range(code.size):
        for k in range(j + 1, code.size):
            t = code.inner(j, k)
            if not _le(t, code.cos_theta):
                sci_ok = False
                violations.append((j + 1, k + 1, str(t)))
            distance = canonical(
                sum((x - y) ** 2 for x, y in zip(code.vectors[j], code.vectors[k]))
            )
            if not _le(-distance, -b):
                scn_ok = False
    return RealValidationReport(sci_ok, scn_ok, violations)


@dataclass
class DelsarteReport:
    dim_param: int
    cos_theta: Fraction
    expansion: GegenbauerExpansion
    nonpositive_ok: bool
    coefficients_ok: bool
    failing_coefficients: list[int]
    value_at_one: Fraction
    bound: Fraction | None = None

    @property
    def hypotheses_ok(self) -> bool:
        return self.nonpositive_ok and self.coefficients_ok


def delsarte_bound(
    polynomial: "sp.Poly | Sequence", cos_theta, dim_param: int
) -> DelsarteReport:
    """Delsarte LP bound ``n <= P(1) / a_0``.

    Needs (i) ``P(r) <= 0`` on [-1, cos theta], decided exactly with Sturm
    sequences, and (ii) ``a_0 > 0`` and ``a_k >= 0`` in the Gegenbauer
    expansion of P.

    Args:
        polynomial: sympy Poly or coefficients in ascending degree.
        cos_theta: Separation cosine in [-1, 1).
        dim_param: Dimension parameter n >= 3 of the Gegenbauer family.

    Returns:
        DelsarteReport; ``bound`` is None when either hypothesis fails.
    """
    cos_theta = _check_cos_theta(cos_theta)
    poly = (
        polynomial
        if isinstance(polynomial, sp.Poly)
        else poly_from_coefficients(polynomial)
    )
    if poly.is_zero:
        raise ValueError("the Delsarte polynomial must be nonzero")
    expansion = expand_in_gegenbauer(poly, dim_param)
    a = expansion.coefficients
    failing = [k for k, ak in enumerate(a) if (ak <= 0 if k == 0 else ak < 0)]
    report = DelsarteReport(
        dim_param=dim_param,
        cos_theta=cos_theta,
        expansion=expansion,
        nonpositive_ok=is_nonpositive_on(poly, -1, cos_theta),
        coefficients_ok=not failing,
        failing_coefficients=failing,
        value_at_one=to_fraction(poly.eval(1)),
    )
    if report.hypotheses_ok:
        report.bound = report.value_at_one / a[0]
        logger.info("✓ Delsarte bound %s", report.bound)
    return report


@dataclass
class RealPfenderReport:
    code_size: int
    sum_ok: bool
    pair_sum: Fraction
    tail_ok: bool
    tail_failures: list[str]
    bound: Fraction | None = None
    implied_n_cap: int | None = None

    @property
    def hypotheses_ok(self) -> bool:
        return self.sum_ok and self.tail_ok


def real_pfender_check(
    code: RealCode, phi: Mapping, c
) -> RealPfenderReport:
    """Pfender's bound ``n <= (phi(1) + c) / c`` for a real code.

    Hypothesis (i) sums phi over the Gram matrix. Hypothesis (ii),
    ``phi(r) + c <= 0`` on [-1, cos theta], is checked on every table key in
    that range and on every inner product the code produces off the diagonal.

    Args:
        code: Real code with exact entries.
        phi: Table from points of [-1, 1] to rationals; must define phi(1).
        c: Positive constant.

    Returns:
        RealPfenderReport with the bound when both hypotheses hold.

    Raises:
        CertificateError: If c <= 0, the code violates the separation, or phi
            is undefined at 1 or at a value it is evaluated on.
    """
    c = Fraction(c)
    if c <= 0:
        raise CertificateError(f"c must be positive, got {c}")
    if not validate_real_code(code).sci_ok:
        raise CertificateError("the code violates the separation condition")
    table = {canonical(k): Fraction(v) for k, v in phi.items()}
    if sp.Integer(1) not in table:
        raise CertificateError("phi must define a value at 1")

    def lookup(value: sp.Expr) -> Fraction:
        try:
            return table[value]
        except KeyError:
            raise CertificateError(f"phi is undefined at {value}") from None

    gram = code.gram()
    values = Counter(value for row in gram for value in row)
    pair_sum = sum(
        (mult * lookup(value) for value, mult in values.items()), Fraction(0)
    )

    checked = {key for key in table if _le(key, code.cos_theta) and _le(-key, 1)}
    checked |= {gram[j][k] for j in range(code.size) for k in range(code.size) if j != k}
    failures = sorted(
        str(key) for key in checked if lookup(key) + c > 0
    )
    report = RealPfenderReport(
        code_size=code.size,
        sum_ok=pair_sum >= 0,
        pair_sum=pair_sum,
        tail_ok=not failures,
        tail_failures=failures,
    )
    if report.hypotheses_ok:
        bound = (table[sp.Integer(1)] + c) / c
        if code.size > bound:
            raise ConsistencyError(
                f"real code of size {code.size} exceeds its certified bound {bound}"
            )
        report.bound = bound
        report.implied_n_cap = math.floor(bound)
    return report
