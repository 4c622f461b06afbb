"""Exact sign analysis of rational polynomials on closed intervals."""

from __future__ import annotations

from fractions import Fraction

import sympy as sp


def _rational(value) -> sp.Rational:
    value = Fraction(value)
    return sp.Rational(value.numerator, value.denominator)


def _sign_changes(sequence: list[sp.Poly], x: sp.Rational) -> int:
    signs = [s for s in (sp.sign(p.eval(x)) for p in sequence) if s != 0]
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def count_roots(poly: sp.Poly, a, b) -> int:
    """Distinct real roots of ``poly`` in the open interval (a, b).

    Counts sign changes of the Sturm sequence of the square-free part:
    ``V(a) - V(b)`` is the number of roots in (a, b], and a root at b is
    removed.
    """
    a, b = _rational(a), _rational(b)
    if a >= b:
        return 0
    if poly.is_zero:
        raise ValueError("the zero polynomial has infinitely many roots")
    square_free = poly.sqf_part()
    if square_free.degree() < 1:
        return 0
    sequence = sp.sturm(square_free)
    count = _sign_changes(sequence, a) - _sign_changes(sequence, b)
    if square_free.eval(b) == 0:
        count -= 1
    return count


def _odd_multiplicity_part(poly: sp.Poly) -> sp.Poly:
    """Product of the square-free factors that occur to an odd power."""
    _, factors = poly.sqf_list()
    result = sp.Poly(1, *poly.gens, domain=poly.domain)
    for factor, multiplicity in factors:
        if multiplicity % 2:
            result *= factor
    return result


def _sign_right_of(poly: sp.Poly, x: sp.Rational) -> int:
    """Sign of ``poly`` just to the right of x: the first nonzero derivative at x."""
    current = poly
    while not current.is_zero:
        value = current.eval(x)
        if value != 0:
            return int(sp.sign(value))
        current = current.diff()
    return 0


def is_nonpositive_on(poly: sp.Poly, a, b) -> bool:
    """Decide ``poly(r) <= 0`` for every r in [a, b] without sampling.

    ``poly`` can only change sign at roots of odd multiplicity. It is
    nonpositive on [a, b] exactly when it is negative just right of a and no
    such root lies strictly inside the interval.
    """
    a, b = _rational(a), _rational(b)
    if a > b:
        raise ValueError(f"empty interval [{a}, {b}]")
    if poly.is_zero:
        return True
    if a == b:
        return bool(poly.eval(a) <= 0)
    if _sign_right_of(poly, a) > 0:
        return False
    sign_changing = _odd_multiplicity_part(poly)
    if sign_changing.degree() < 1:
        return True
    return count_roots(sign_changing, a, b) == 0
