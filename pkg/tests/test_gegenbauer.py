"""Tests for Gegenbauer polynomials, expansions and orthogonality."""

import random
from fractions import Fraction

import pytest
import sympy as sp

from padic_codes.calculations.gegenbauer import (
    GegenbauerBasis,
    coefficients_of,
    expand_in_gegenbauer,
    gegenbauer_eval,
    gegenbauer_poly,
    orthogonality_defect,
    poly_from_coefficients,
    to_fraction,
    weighted_inner_product,
)
from padic_codes.core.errors import QuadratureError


@pytest.mark.parametrize(
    "k, n, r, expected",
    [
        (2, 4, 1, Fraction(1)),
        (2, 3, Fraction(1, 2), Fraction(-1, 8)),
        (0, 5, Fraction(7, 3), Fraction(1)),
        (1, 6, Fraction(-2, 5), Fraction(-2, 5)),
        # G_2^(4)(r) = (4r^2 - 1) / 3
        (2, 4, Fraction(1, 2), Fraction(0)),
    ],
)
def test_examples(k, n, r, expected):
    """Test hand-computed values of G_k^(n)."""
    assert gegenbauer_eval(k, n, r) == expected


@pytest.mark.parametrize("n", range(3, 9))
def test_normalised_at_one(n):
    """Test G_k^(n)(1) = 1 exactly for k <= 10."""
    for k in range(11):
        assert gegenbauer_eval(k, n, 1) == 1
        assert gegenbauer_poly(k, n).eval(1) == 1


@pytest.mark.parametrize("n", range(3, 9))
def test_degree_and_parity(n):
    """Test deg G_k = k and G_k(-r) = (-1)^k G_k(r)."""
    for k in range(9):
        poly = gegenbauer_poly(k, n)
        assert poly.degree() == k
        for r in (Fraction(1, 3), Fraction(-3, 4)):
            assert gegenbauer_eval(k, n, -r) == (-1) ** k * gegenbauer_eval(k, n, r)


def test_polynomial_matches_recursion():
    """Test the symbolic polynomial against the scalar recursion."""
    for n in (3, 5, 8):
        for k in range(8):
            poly = gegenbauer_poly(k, n)
            for r in (Fraction(0), Fraction(2, 7), Fraction(-5, 6)):
                value = poly.eval(sp.Rational(r.numerator, r.denominator))
                assert to_fraction(value) == gegenbauer_eval(k, n, r)


def test_legendre_case():
    """Test n = 3 gives the Legendre polynomial P_3 = (5r^3 - 3r) / 2."""
    assert coefficients_of(gegenbauer_poly(3, 3)) == [
        0,
        Fraction(-3, 2),
        0,
        Fraction(5, 2),
    ]


@pytest.mark.parametrize("k, n", [(-1, 3), (2, 2)])
def test_invalid_parameters(k, n):
    """Test negative degrees and n < 3 are refused."""
    with pytest.raises(ValueError):
        gegenbauer_eval(k, n, 0)


def test_basis_limits_its_degree():
    """Test the basis object refuses degrees above its maximum."""
    basis = GegenbauerBasis(4, 3)
    assert basis.polynomial(3) == gegenbauer_poly(3, 4)
    assert basis.weight(0.0) == 1.0
    with pytest.raises(ValueError):
        basis.polynomial(4)


def test_expand_linear():
    """Test r + 1/2 = 1/2 G_0 + G_1."""
    expansion = expand_in_gegenbauer([Fraction(1, 2), 1], 3)
    assert expansion.coefficients == (Fraction(1, 2), Fraction(1))


def test_expand_square():
    """Test r^2 = 1/4 G_0 + 3/4 G_2 for n = 4."""
    expansion = expand_in_gegenbauer([0, 0, 1], 4)
    assert expansion.coefficients == (Fraction(1, 4), Fraction(0), Fraction(3, 4))
    assert expansion.degree == 2


def test_expand_zero_polynomial():
    """Test the zero polynomial expands to a single zero coefficient."""
    assert expand_in_gegenbauer([0], 5).coefficients == (Fraction(0),)


def test_expansion_round_trip():
    """Test reconstruction on 500 random rational polynomials of degree <= 12."""
    rng = random.Random(12)
    for _ in range(500):
        degree = rng.randint(0, 12)
        coefficients = [
            Fraction(rng.randint(-20, 20), rng.randint(1, 9)) for _ in range(degree + 1)
        ]
        n = rng.randint(3, 8)
        poly = poly_from_coefficients(coefficients)
        expansion = expand_in_gegenbauer(poly, n)
        assert coefficients_of(expansion.reconstruct()) == coefficients_of(poly)


@pytest.mark.parametrize("n", range(3, 9))
def test_orthogonality(n):
    """Test |integral of G_j G_k rho| <= 1e-9 for j != k <= 8."""
    for j in range(9):
        for k in range(j + 1, 9):
            assert orthogonality_defect(j, k, n) <= 1e-9


def test_weighted_norm_of_g1():
    """Test the integral of r^2 over [-1, 1] for n = 3 is 2/3."""
    value, nodes = weighted_inner_product(1, 1, 3)
    assert value == pytest.approx(2 / 3, abs=1e-12)
    assert nodes >= 32


def test_quadrature_node_cap():
    """Test an explicit error when the node cap is too small."""
    with pytest.raises(QuadratureError):
        weighted_inner_product(2, 4, 5, tolerance=1e-12, max_nodes=16)
