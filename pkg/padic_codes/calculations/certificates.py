"""Pfender-style bound certificates for p-adic spherical codes.

A certificate is a constant ``c > 0`` and a function phi on pair values. If

    (i)  sum_{j,k} phi(|2 - 2<tau_j, tau_k>|) >= 0, and
    (ii) phi(r) + c <= 0 on the separated values,

then ``n <= (phi(0) + c) / c``. The interval form evaluates (ii) on the whole
ray ``[2(1 - cos theta), inf)``; the finite form only on the values the code
actually produces off the diagonal. Hypothesis (i) depends on the code, so
every certificate is checked against a concrete code.
"""

from __future__ import annotations

import enum
import logging
import math
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping

from padic_codes.calculations.codes import (
    PAdicCode,
    off_diagonal_values,
    pair_value_multiset,
    validate_code,
)
from padic_codes.calculations.padic import PAdicAbs, Prime, format_rational
from padic_codes.calculations.simplex import (
    LinearConstraint,
    LPStatus,
    rational_simplex,
)
from padic_codes.core.errors import (
    CertificateError,
    ConsistencyError,
    PrimeMismatchError,
    SeparationMismatchError,
)

logger = logging.getLogger(__name__)


class CertificateForm(str, enum.Enum):
    FINITE = "finite"
    INTERVAL = "interval"


@dataclass(frozen=True)
class ThresholdPiece:
    """phi equals ``value`` from ``cutoff`` up to the next piece's cutoff."""

    cutoff: Fraction
    value: Fraction


@dataclass(frozen=True)
class PfenderCertificate:
    c: Fraction
    form: CertificateForm = CertificateForm.FINITE
    phi: Mapping[PAdicAbs, Fraction] = field(default_factory=dict)
    rule: tuple[ThresholdPiece, ...] = ()
    threshold: Fraction | None = None

    def __post_init__(self):
        object.__setattr__(self, "c", Fraction(self.c))
        if self.c <= 0:
            raise CertificateError(f"c must be positive, got {self.c}")
        if self.form is CertificateForm.FINITE:
            if not any(key.is_zero for key in self.phi):
                raise CertificateError("phi must define a value at 0")
            if len({key.prime for key in self.phi}) > 1:
                raise PrimeMismatchError("phi keys use more than one prime")
        else:
            if not self.rule or self.rule[0].cutoff != 0:
                raise CertificateError("the threshold rule must start at cutoff 0")
            cutoffs = [piece.cutoff for piece in self.rule]
            if any(a >= b for a, b in zip(cutoffs, cutoffs[1:])):
                raise CertificateError("rule cutoffs must increase strictly")

    @property
    def prime(self) -> int | None:
        return next(iter(self.phi)).prime if self.phi else None

    @property
    def phi_zero(self) -> Fraction:
        if self.form is CertificateForm.INTERVAL:
            return self.rule[0].value
        return next(v for k, v in self.phi.items() if k.is_zero)

    def value_at(self, r: PAdicAbs) -> Fraction:
        if self.form is CertificateForm.INTERVAL:
            chosen = self.rule[0].value
            for piece in self.rule:
                if r.ge_rational(piece.cutoff):
                    chosen = piece.value
            return chosen
        if r.is_zero:
            return self.phi_zero
        try:
            return self.phi[r]
        except KeyError:
            raise CertificateError(f"phi is undefined at {r.label()}") from None

    def scaled(self, factor) -> "PfenderCertificate":
        """The certificate ``(factor * phi, factor * c)``."""
        factor = Fraction(factor)
        return PfenderCertificate(
            c=self.c * factor,
            form=self.form,
            phi={k: v * factor for k, v in self.phi.items()},
            rule=tuple(
                ThresholdPiece(piece.cutoff, piece.value * factor) for piece in self.rule
            ),
            threshold=self.threshold,
        )


@dataclass
class BoundResult:
    """Outcome of :func:`verify_certificate`.

    ``bound`` and ``implied_n_cap`` are set only when both hypotheses hold.
    ``special_case`` flags ``phi(0) + c <= 1``, where ``n <= 1/c`` also holds.
    """

    code_size: int
    hypotheses_ok: bool
    sum_ok: bool
    pair_sum: Fraction
    tail_ok: bool
    tail_failures: list[str]
    bound: Fraction | None = None
    implied_n_cap: int | None = None
    special_case: bool = False
    special_cap: int | None = None


def certificate_bound(cert: PfenderCertificate) -> Fraction:
    """``(phi(0) + c) / c``."""
    return (cert.phi_zero + cert.c) / cert.c


def _tail_failures(code: PAdicCode, cert: PfenderCertificate) -> list[str]:
    failures = []
    if cert.form is CertificateForm.FINITE:
        for value in sorted(off_diagonal_values(code)):
            if cert.value_at(value) + cert.c > 0:
                failures.append(value.label())
        return failures

    b = code.spec.bound
    pieces = cert.rule
    for index, piece in enumerate(pieces):
        upper = pieces[index + 1].cutoff if index + 1 < len(pieces) else None
        if upper is not None and upper <= b:
            continue
        if piece.value + cert.c > 0:
            failures.append(f"[{format_rational(max(piece.cutoff, b))}, "
                            f"{format_rational(upper) if upper is not None else 'inf'})")
    return failures


def verify_certificate(code: PAdicCode, cert: PfenderCertificate) -> BoundResult:
    """Check both hypotheses exactly and, when they hold, the bound itself.

    Args:
        code: A valid (PE) code with exact unit self-products.
        cert: Finite or interval certificate.

    Returns:
        BoundResult; ``bound`` is set only when both hypotheses hold.

    Raises:
        CertificateError: If the code is invalid or its variant drops (PE) or
            the unit self-products the bound relies on.
        PrimeMismatchError: If a finite certificate names another prime.
        SeparationMismatchError: If an interval certificate does not match
            the code's exact threshold.
        ConsistencyError: If the proof chain fails although both hypotheses
            hold.
    """
    if not code.variant.use_pe or not code.variant.require_unit_self_product:
        raise CertificateError(
            "certificates apply to (PE) codes with unit self-products only"
        )
    report = validate_code(code)
    if not report.valid:
        raise CertificateError("the code does not pass validation")
    if cert.form is CertificateForm.FINITE and cert.prime != code.prime.value:
        raise PrimeMismatchError(
            f"certificate uses p = {cert.prime}, code uses p = {code.prime}"
        )
    if cert.form is CertificateForm.INTERVAL:
        if not code.spec.exact:
            raise SeparationMismatchError(
                "interval certificates need an exact separation"
            )
        if cert.threshold is not None and cert.threshold != code.spec.bound:
            raise SeparationMismatchError(
                f"certificate threshold {format_rational(cert.threshold)} differs "
                f"from the code's {format_rational(code.spec.bound)}"
            )

    n = code.size
    values = pair_value_multiset(code)
    pair_sum = sum(
        (mult * cert.value_at(value) for value, mult in values.items()), Fraction(0)
    )
    failures = _tail_failures(code, cert)
    result = BoundResult(
        code_size=n,
        hypotheses_ok=pair_sum >= 0 and not failures,
        sum_ok=pair_sum >= 0,
        pair_sum=pair_sum,
        tail_ok=not failures,
        tail_failures=failures,
    )
    if not result.hypotheses_ok:
        logger.info("hypotheses fail: sum=%s tail=%s", pair_sum, failures)
        return result

    c = cert.c
    phi0 = cert.phi_zero
    psi_sum = pair_sum + c * n * n
    if not (c * n * n <= psi_sum <= n * (phi0 + c)):
        raise ConsistencyError(
            f"proof chain broken: {c * n * n} <= {psi_sum} <= {n * (phi0 + c)} fails"
        )
    bound = certificate_bound(cert)
    if n > bound:
        raise ConsistencyError(f"code of size {n} exceeds its certified bound {bound}")
    result.bound = bound
    result.implied_n_cap = math.floor(bound)
    result.special_case = phi0 + c <= 1
    if result.special_case:
        result.special_cap = math.floor(1 / c)
    return result


def trivial_tight_certificate(
    n: int, values: Iterable[PAdicAbs], prime: "Prime | int"
) -> PfenderCertificate:
    """c = 1, phi(0) = n - 1, phi(v) = -1 on every off-diagonal value: bound n."""
    if n < 1:
        raise ValueError("code size must be at least 1")
    phi = {PAdicAbs.zero(prime): Fraction(n - 1)}
    for value in values:
        if value.is_zero:
            raise CertificateError("0 cannot be an off-diagonal value of a certificate")
        phi[value] = Fraction(-1)
    return PfenderCertificate(c=Fraction(1), phi=phi)


def synthesize_certificate_lp(
    values: Mapping[PAdicAbs, int], n: int, prime: "Prime | int"
) -> PfenderCertificate:
    """Best finite-form certificate for a code of size n, with c = 1.

    Solves: minimise phi(0) subject to
    ``n phi(0) + sum_v mult(v) phi(v) >= 0`` and ``phi(v) <= -1``.
    Scaling ``(phi, c) -> (l phi, l c)`` leaves the bound unchanged, so c = 1
    loses nothing. The optimum is phi(0) = n - 1.

    Args:
        values: Multiplicity of each off-diagonal value |2 - 2<tau_j, tau_k>|_p.
        n: Code size.
        prime: The code's prime.

    Returns:
        Finite-form PfenderCertificate with c = 1.

    Raises:
        ValueError: If n < 1.
        CertificateError: If 0 is among the values.
        ConsistencyError: If the LP has no optimum.
    """
    if n < 1:
        raise ValueError("code size must be at least 1")
    support = sorted(Counter(values))
    if any(v.is_zero for v in support):
        raise CertificateError("0 cannot be an off-diagonal value of a certificate")
    width = 1 + len(support)
    constraints = [
        LinearConstraint.of([n] + [values[v] for v in support], ">=", 0)
    ]
    for index in range(len(support)):
        row = [0] * width
        row[index + 1] = 1
        constraints.append(LinearConstraint.of(row, "<=", -1))
    objective = [1] + [0] * len(support)
    result = rational_simplex(objective, constraints, free_variables=range(width))
    if result.status is not LPStatus.OPTIMAL:
        raise ConsistencyError(
            f"certificate LP ended {result.status.value}; the trivial certificate is feasible"
        )
    phi = {PAdicAbs.zero(prime): result.values[0]}
    for index, value in enumerate(support):
        phi[value] = result.values[index + 1]
    logger.info(
        "✓ certificate LP solved in %d pivots: phi(0) = %s",
        result.pivots,
        format_rational(result.values[0]),
    )
    return PfenderCertificate(c=Fraction(1), phi=phi)


def kissing_interval_certificate(n: int) -> PfenderCertificate:
    """Interval form for theta = pi/3: phi = n - 1 on [0, 1), -1 on [1, inf), c = 1."""
    if n < 1:
        raise ValueError("code size must be at least 1")
    return PfenderCertificate(
        c=Fraction(1),
        form=CertificateForm.INTERVAL,
        rule=(
            ThresholdPiece(Fraction(0), Fraction(n - 1)),
            ThresholdPiece(Fraction(1), Fraction(-1)),
        ),
        threshold=Fraction(1),
    )
