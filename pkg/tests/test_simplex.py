"""Tests for the exact rational simplex."""

from fractions import Fraction

import pytest

from padic_codes.calculations.simplex import (
    LinearConstraint,
    LPStatus,
    rational_simplex,
)
from padic_codes.core.errors import LinearProgramError


def test_minimize_with_lower_bound():
    """Test minimize x s.t. x >= 3."""
    result = rational_simplex([1], [LinearConstraint.of([1], ">=", 3)])
    assert result.status is LPStatus.OPTIMAL
    assert result.values == (Fraction(3),)
    assert result.objective == 3


def test_contradictory_bounds_are_infeasible():
    """Test maximize x s.t. x <= 0, x >= 1."""
    result = rational_simplex(
        [1],
        [LinearConstraint.of([1], "<=", 0), LinearConstraint.of([1], ">=", 1)],
        maximize=True,
    )
    assert result.status is LPStatus.INFEASIBLE


def test_unbounded_program():
    """Test maximize x + y with only x - y <= 1."""
    result = rational_simplex(
        [1, 1], [LinearConstraint.of([1, -1], "<=", 1)], maximize=True
    )
    assert result.status is LPStatus.UNBOUNDED


def test_two_vector_certificate_program():
    """Test min phi0 s.t. 2 phi0 - 2 >= 0 after substituting phi(1) <= -1."""
    constraints = [
        LinearConstraint.of([2, 2], ">=", 0),
        LinearConstraint.of([0, 1], "<=", -1),
    ]
    result = rational_simplex([1, 0], constraints, free_variables=[0, 1])
    assert result.status is LPStatus.OPTIMAL
    assert result.values[0] == 1
    assert result.values[1] == -1


def test_classic_maximisation():
    """Test a textbook program with a fractional optimum."""
    # max 3x + 2y s.t. x + y <= 4, x + 3y <= 6, x <= 3
    result = rational_simplex(
        [3, 2],
        [
            LinearConstraint.of([1, 1], "<=", 4),
            LinearConstraint.of([1, 3], "<=", 6),
            LinearConstraint.of([1, 0], "<=", 3),
        ],
        maximize=True,
    )
    assert result.status is LPStatus.OPTIMAL
    assert result.values == (Fraction(3), Fraction(1))
    assert result.objective == 11


def test_equality_and_fractions():
    """Test an equality row with a rational optimum."""
    # min x + y s.t. 3x + 2y = 7, x - y >= -1/2
    result = rational_simplex(
        [1, 1],
        [
            LinearConstraint.of([3, 2], "==", 7),
            LinearConstraint.of([1, -1], ">=", Fraction(-1, 2)),
        ],
    )
    assert result.status is LPStatus.OPTIMAL
    assert result.values == (Fraction(7, 3), Fraction(0))
    assert result.objective == Fraction(7, 3)


def test_redundant_equalities():
    """Test duplicated equality rows do not break phase one."""
    result = rational_simplex(
        [1, 2],
        [
            LinearConstraint.of([1, 1], "==", 2),
            LinearConstraint.of([2, 2], "==", 4),
        ],
    )
    assert result.status is LPStatus.OPTIMAL
    assert result.values == (Fraction(2), Fraction(0))


def test_free_variable_can_go_negative():
    """Test min x with a free x bounded below by -5."""
    result = rational_simplex(
        [1], [LinearConstraint.of([1], ">=", -5)], free_variables=[0]
    )
    assert result.values == (Fraction(-5),)


def test_bad_constraints_are_rejected():
    """Test shape and relation checks."""
    with pytest.raises(LinearProgramError):
        LinearConstraint.of([1], "<", 0)
    with pytest.raises(LinearProgramError):
        rational_simplex([1, 1], [LinearConstraint.of([1], "<=", 0)])
