"""Two-phase simplex over exact rationals with Bland's rule."""

from __future__ import annotations

import enum
import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from padic_codes.core.errors import LinearProgramError

logger = logging.getLogger(__name__)

RELATIONS = ("<=", ">=", "==")


class LPStatus(str, enum.Enum):
    OPTIMAL = "optimal"
    INFEASIBLE = "infeasible"
    UNBOUNDED = "unbounded"


@dataclass(frozen=True)
class LinearConstraint:
    """``sum_j coefficients[j] * x_j  <relation>  rhs``."""

    coefficients: tuple[Fraction, ...]
    relation: str
    rhs: Fraction

    @classmethod
    def of(cls, coefficients: Iterable, relation: str, rhs) -> "LinearConstraint":
        if relation not in RELATIONS:
            raise LinearProgramError(f"unknown relation {relation!r}")
        return cls(tuple(Fraction(c) for c in coefficients), relation, Fraction(rhs))


@dataclass(frozen=True)
class LinearProgramResult:
    status: LPStatus
    values: tuple[Fraction, ...] | None = None
    objective: Fraction | None = None
    pivots: int = 0


def _pivot(tableau: list[list[Fraction]], basis: list[int], row: int, col: int):
    pivot_row = tableau[row]
    factor = pivot_row[col]
    tableau[row] = pivot_row = [v / factor for v in pivot_row]
    for i, other in enumerate(tableau):
        if i != row and other[col] != 0:
            scale = other[col]
            tableau[i] = [a - scale * b for a, b in zip(other, pivot_row)]
    basis[row] = col


def _optimise(
    tableau: list[list[Fraction]],
    basis: list[int],
    cost: list[Fraction],
    allowed: Sequence[int],
    limit: int,
) -> tuple[bool, int]:
    """Minimise ``cost . x`` from the current basis; False means unbounded."""
    pivots = 0
    while True:
        entering = None
        for j in allowed:
            reduced = cost[j] - sum(
                cost[b] * row[j] for b, row in zip(basis, tableau) if cost[b]
            )
            if reduced < 0:
                entering = j
                break
        if entering is None:
            return True, pivots

        leaving = None
        best_ratio = None
        for i, row in enumerate(tableau):
            if row[entering] > 0:
                ratio = row[-1] / row[entering]
                if (
                    best_ratio is None
                    or ratio < best_ratio
                    or (ratio == best_ratio and basis[i] < basis[leaving])
                ):
                    best_ratio = ratio
                    leaving = i
        if leaving is None:
            return False, pivots

        _pivot(tableau, basis, leaving, entering)
        pivots += 1
        if pivots > limit:
            raise LinearProgramError(f"simplex exceeded {limit} pivots")


def rational_simplex(
    objective: Sequence,
    constraints: Sequence[LinearConstraint],
    *,
    maximize: bool = False,
    free_variables: Iterable[int] = (),
    pivot_limit: int = 100_000,
) -> LinearProgramResult:
    """Solve an LP exactly.

    Variables are non-negative unless listed in ``free_variables`` (those are
    split into two non-negative parts). Infeasible and unbounded programs are
    reported through ``status``; no floating point is used anywhere.
    """
    objective = [Fraction(c) for c in objective]
    n_vars = len(objective)
    free = set(free_variables)
    for constraint in constraints:
        if len(constraint.coefficients) != n_vars:
            raise LinearProgramError(
                f"constraint has {len(constraint.coefficients)} coefficients, "
                f"objective has {n_vars}"
            )

    columns: list[tuple[int, int]] = []
    for j in range(n_vars):
        columns.append((j, 1))
        if j in free:
            columns.append((j, -1))
    n_struct = len(columns)
    n_slack = sum(1 for c in constraints if c.relation != "==")
    m = len(constraints)
    first_artificial = n_struct + n_slack
    width = first_artificial + m

    tableau: list[list[Fraction]] = []
    slack = n_struct
    for i, constraint in enumerate(constraints):
        row = [Fraction(0)] * (width + 1)
        for col, (j, sign) in enumerate(columns):
            row[col] = sign * constraint.coefficients[j]
        if constraint.relation == "<=":
            row[slack] = Fraction(1)
            slack += 1
        elif constraint.relation == ">=":
            row[slack] = Fraction(-1)
            slack += 1
        row[-1] = constraint.rhs
        if row[-1] < 0:
            row = [-v for v in row]
        row[first_artificial + i] = Fraction(1)
        tableau.append(row)
    basis = [first_artificial + i for i in range(m)]

    phase_one = [Fraction(0)] * first_artificial + [Fraction(1)] * m
    _, pivots = _optimise(tableau, basis, phase_one, range(width), pivot_limit)
    infeasibility = sum(
        row[-1] for b, row in zip(basis, tableau) if b >= first_artificial
    )
    if infeasibility > 0:
        logger.debug("phase one ended at %s: infeasible", infeasibility)
        return LinearProgramResult(LPStatus.INFEASIBLE, pivots=pivots)

    # drive zero-level artificials out of the basis, dropping redundant rows
    i = 0
    while i < len(tableau):
        if basis[i] >= first_artificial:
            col = next(
                (j for j in range(first_artificial) if tableau[i][j] != 0), None
            )
            if col is None:
                del tableau[i]
                del basis[i]
                continue
            _pivot(tableau, basis, i, col)
            pivots += 1
        i += 1

    sign = -1 if maximize else 1
    phase_two = [Fraction(0)] * width
    for col, (j, part) in enumerate(columns):
        phase_two[col] = sign * part * objective[j]
    bounded, more = _optimise(
        tableau, basis, phase_two, range(first_artificial), pivot_limit
    )
    pivots += more
    if not bounded:
        return LinearProgramResult(LPStatus.UNBOUNDED, pivots=pivots)

    column_values = [Fraction(0)] * width
    for b, row in zip(basis, tableau):
        column_values[b] = row[-1]
    values = [Fraction(0)] * n_vars
    for col, (j, part) in enumerate(columns):
        values[j] += part * column_values[col]
    value = sum((c * x for c, x in zip(objective, values)), Fraction(0))
    return LinearProgramResult(LPStatus.OPTIMAL, tuple(values), value, pivots)
