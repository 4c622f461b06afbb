"""Gegenbauer polynomials G_k^(n) and expansions in that basis.

    G_0(r) = 1,  G_1(r) = r,
    G_k(r) = ((2k + n - 4) r G_{k-1}(r) - (k - 1) G_{k-2}(r)) / (k + n - 3)

The family is orthogonal on [-1, 1] for the weight (1 - r^2)^((n - 3)/2) and
normalised so that G_k(1) = 1. ``dim_param`` is always the superscript n; it
is never inferred from a code size.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np
import sympy as sp
from cachetools import LRUCache, cached

from padic_codes.core.config import settings
from padic_codes.core.errors import ConsistencyError, QuadratureError

logger = logging.getLogger(__name__)

R = sp.Symbol("r")


def _check(k: int, dim_param: int):
    if k < 0:
        raise ValueError(f"degree must be non-negative, got {k}")
    if dim_param < 3:
        raise ValueError(f"dim_param must be at least 3, got {dim_param}")


def to_fraction(value) -> Fraction:
    """sympy Rational (or int) to Fraction."""
    value = sp.Rational(value)
    return Fraction(int(value.p), int(value.q))


def poly_from_coefficients(coefficients: Sequence) -> sp.Poly:
    """Polynomial in r over QQ from ascending coefficients c_0, c_1, ..."""
    terms = [sp.Rational(Fraction(c).numerator, Fraction(c).denominator) for c in coefficients]
    return sp.Poly(list(reversed(terms)) or [0], R, domain="QQ")


def coefficients_of(poly: sp.Poly) -> list[Fraction]:
    """Ascending exact coefficients of a polynomial in r."""
    return [to_fraction(c) for c in reversed(poly.all_coeffs())]


def gegenbauer_eval(k: int, dim_param: int, r) -> Fraction:
    """G_k^(n)(r) exactly by the three-term recursion."""
    _check(k, dim_param)
    r = Fraction(r)
    n = dim_param
    previous, current = Fraction(1), r
    if k == 0:
        return previous
    for j in range(2, k + 1):
        previous, current = current, (
            (2 * j + n - 4) * r * current - (j - 1) * previous
        ) / (j + n - 3)
    return current


@cached(LRUCache(maxsize=512))
def gegenbauer_poly(k: int, dim_param: int) -> sp.Poly:
    """G_k^(n) as an exact polynomial in r."""
    _check(k, dim_param)
    if k == 0:
        return sp.Poly(1, R, domain="QQ")
    if k == 1:
        return sp.Poly(R, R, domain="QQ")
    n = dim_param
    r = sp.Poly(R, R, domain="QQ")
    return (
        r * gegenbauer_poly(k - 1, n) * (2 * k + n - 4)
        - gegenbauer_poly(k - 2, n) * (k - 1)
    ) * sp.Rational(1, k + n - 3)


@dataclass(frozen=True)
class GegenbauerBasis:
    dim_param: int
    max_degree: int

    def __post_init__(self):
        _check(self.max_degree, self.dim_param)

    def polynomial(self, k: int) -> sp.Poly:
        if k > self.max_degree:
            raise ValueError(f"degree {k} exceeds the basis maximum {self.max_degree}")
        return gegenbauer_poly(k, self.dim_param)

    def weight(self, r: float) -> float:
        return (1.0 - r * r) ** ((self.dim_param - 3) / 2)


@dataclass(frozen=True)
class GegenbauerExpansion:
    """P = sum_k a_k G_k^(n)."""

    dim_param: int
    coefficients: tuple[Fraction, ...]

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    def reconstruct(self) -> sp.Poly:
        total = sp.Poly(0, R, domain="QQ")
        for k, a in enumerate(self.coefficients):
            if a:
                total += gegenbauer_poly(k, self.dim_param) * sp.Rational(
                    a.numerator, a.denominator
                )
        return total


def expand_in_gegenbauer(
    polynomial: "sp.Poly | Sequence", dim_param: int
) -> GegenbauerExpansion:
    """Coefficients a_0..a_m with P = sum a_k G_k^(n), by back substitution.

    G_k has degree exactly k, so the change of basis is triangular: peel off
    the top coefficient with G_m, then repeat on the remainder.
    """
    _check(0, dim_param)
    poly = (
        polynomial
        if isinstance(polynomial, sp.Poly)
        else poly_from_coefficients(polynomial)
    )
    m = 0 if poly.is_zero else poly.degree()
    remainder = poly
    coefficients = [Fraction(0)] * (m + 1)
    for k in range(m, -1, -1):
        basis = gegenbauer_poly(k, dim_param)
        top = remainder.coeff_monomial(R**k)
        if top == 0:
            continue
        a = sp.Rational(top) / basis.LC()
        coefficients[k] = to_fraction(a)
        remainder = remainder - basis * a
    if not remainder.is_zero:
        raise ConsistencyError(f"expansion left a remainder {remainder.as_expr()}")
    return GegenbauerExpansion(dim_param, tuple(coefficients))


def _float_coefficients(k: int, dim_param: int) -> np.ndarray:
    return np.array(
        [float(c) for c in gegenbauer_poly(k, dim_param).all_coeffs()], dtype=float
    )


def weighted_inner_product(
    j: int,
    k: int,
    dim_param: int,
    tolerance: float | None = None,
    max_nodes: int | None = None,
) -> tuple[float, int]:
    """Integral of G_j G_k (1 - r^2)^((n-3)/2) over [-1, 1] and the nodes used.

    With r = sin t the integrand becomes G_j(sin t) G_k(sin t) cos^(n-2) t on
    [-pi/2, pi/2], which is smooth for every n >= 3. Gauss-Legendre rules are
    doubled from 16 nodes until two successive values agree to ``tolerance``.
    """
    _check(max(j, k), dim_param)
    tolerance = settings.quadrature_tolerance if tolerance is None else tolerance
    max_nodes = settings.quadrature_max_nodes if max_nodes is None else max_nodes
    gj = _float_coefficients(j, dim_param)
    gk = _float_coefficients(k, dim_param)
    half = np.pi / 2

    def integrate(nodes: int) -> float:
        x, w = np.polynomial.legendre.leggauss(nodes)
        t = half * x
        s = np.sin(t)
        values = np.polyval(gj, s) * np.polyval(gk, s) * np.cos(t) ** (dim_param - 2)
        return float(half * np.dot(w, values))

    nodes = 16
    previous = integrate(nodes)
    while True:
        nodes *= 2
        if nodes > max_nodes:
            raise QuadratureError(
                f"no convergence to {tolerance:g} within {max_nodes} nodes "
                f"for j={j}, k={k}, n={dim_param}"
            )
        current = integrate(nodes)
        if abs(current - previous) <= tolerance:
            logger.debug("quadrature j=%d k=%d n=%d: %d nodes", j, k, dim_param, nodes)
            return current, nodes
        previous = current


def orthogonality_defect(j: int, k: int, dim_param: int) -> float:
    """|integral of G_j G_k rho| on [-1, 1]; the weighted norm when j == k."""
    value, _ = weighted_inner_product(j, k, dim_param)
    return abs(value)
