"""Tests for maximal code search, witness lifting and the subset oracle."""

from fractions import Fraction

import pytest

from padic_codes.calculations.codes import (
    LevelStatus,
    SeparationSpec,
    effective_level,
    off_diagonal_values,
    validate_code,
)
from padic_codes.calculations.clique import max_clique
from padic_codes.calculations.residue_graph import build_residue_graph
from padic_codes.calculations.search import (
    dyadic_lower_bound,
    exhaustive_max_code,
    kissing_number,
    lift_clique_to_code,
    loosest_spec,
    search_max_code,
)
from padic_codes.core.errors import (
    ResourceBudgetError,
    UnboundedSearchError,
    UnsupportedPrimeError,
)

KISSING = SeparationSpec.kissing()


@pytest.mark.parametrize("p, dim, expected", [(3, 2, 4), (5, 2, 4), (3, 1, 2)])
def test_kissing_numbers_match_oracle(p, dim, expected):
    """Test exact kissing numbers against exhaustive subset search."""
    assert kissing_number(p, dim).size == expected
    assert exhaustive_max_code(p, dim, KISSING) == expected


def test_kissing_number_refuses_p2():
    """Test that the exact solver does not cover p = 2."""
    with pytest.raises(UnsupportedPrimeError):
        kissing_number(2, 2)


GRID = [
    (3, 1, 0, 2),
    (3, 1, 1, 2),
    (3, 2, 0, 4),
    (3, 2, 1, 4),
    (3, 3, 0, 6),
    (3, 3, 1, 6),
    (5, 1, 0, 2),
    (5, 1, 1, 2),
    (5, 2, 0, 4),
    (5, 2, 1, 4),
    (5, 3, 0, 6),
    (7, 1, 0, 2),
    (7, 1, 1, 2),
    (7, 2, 0, 8),
    (7, 2, 1, 8),
    (7, 3, 0, 42),
    (7, 3, 1, 42),
]


@pytest.mark.parametrize("p, dim, level, expected", GRID)
def test_clique_reduction_matches_oracle(p, dim, level, expected):
    """Test max clique size equals the exhaustive maximum at that level."""
    spec = loosest_spec(p, level)
    assert effective_level(spec, p).level == level
    outcome = search_max_code(p, dim, spec)
    assert outcome.size == expected
    assert exhaustive_max_code(p, dim, spec) == expected


def test_one_vector_per_residue_class_at_level_one():
    """Test p=5, d=3, level 1: thirty vectors, one over each point mod 5."""
    spec = loosest_spec(5, 1)
    outcome = search_max_code(5, 3, spec)
    assert outcome.size == 30
    assert outcome.vertices == 750
    assert validate_code(outcome.code).valid
    graph = build_residue_graph(5, 3, 0)
    reduced = {tuple(int(v) % 5 for v in vector.values) for vector in outcome.code.vectors}
    assert len(reduced) == 30
    assert reduced == set(graph.vertices)


def test_oracle_exceeds_node_budget():
    """Test that the subset search stops at its node cap."""
    with pytest.raises(ResourceBudgetError):
        exhaustive_max_code(5, 3, loosest_spec(5, 1), node_budget=1_000)


def test_oracle_respects_enumeration_budget():
    """Test that the oracle refuses a residue space past its budget."""
    with pytest.raises(ResourceBudgetError):
        exhaustive_max_code(7, 3, loosest_spec(7, 1), budget=10_000)


@pytest.mark.parametrize("p, dim, level", [(3, 2, 0), (3, 2, 1), (5, 2, 1), (7, 2, 1)])
def test_lifted_witness_is_a_valid_code(p, dim, level):
    """Test that Hensel-lifted cliques validate with the clique's size."""
    graph = build_residue_graph(p, dim, level)
    clique = max_clique(graph)
    code = lift_clique_to_code(graph, clique.witness, precision=level + 4)
    assert code.size == clique.size
    assert validate_code(code).valid
    for value in off_diagonal_values(code):
        assert not value.is_zero
        assert value.exponent <= level


def test_k4_witness_lifts_to_an_exact_code():
    """Test centred lifts: the p=3 kissing witness is (0,1), (0,-1), (1,0), (-1,0)."""
    graph = build_residue_graph(3, 2, 0)
    code = lift_clique_to_code(graph, max_clique(graph).witness)
    assert code.variant.self_product_precision is None
    assert [v.values for v in code.vectors] == [(0, 1), (0, -1), (1, 0), (-1, 0)]
    assert validate_code(code).valid


def test_singleton_witness():
    """Test that one vertex lifts to a valid n=1 code."""
    graph = build_residue_graph(5, 2, 0)
    code = lift_clique_to_code(graph, [graph.vertices[0]])
    assert code.size == 1
    assert validate_code(code).valid


def test_non_clique_witness_is_refused():
    """Test that a witness with a non-adjacent pair is rejected."""
    graph = build_residue_graph(3, 2, 1)
    x = graph.vertices[0]
    partner = next(
        y
        for y in graph.vertices
        if y != x and sum(a * b for a, b in zip(x, y)) % graph.modulus == 1
    )
    with pytest.raises(ValueError):
        lift_clique_to_code(graph, [x, partner])


@pytest.mark.parametrize("cos_theta", [Fraction(-1, 2), Fraction(0), Fraction(1, 3)])
def test_infeasible_separation_gives_size_one(cos_theta):
    """Test that b > 1 for odd p yields the single-vector code."""
    outcome = search_max_code(3, 2, SeparationSpec(cos_theta=cos_theta))
    assert outcome.level.status is LevelStatus.INFEASIBLE
    assert outcome.size == 1
    assert validate_code(outcome.code).valid
    assert exhaustive_max_code(3, 2, SeparationSpec(cos_theta=cos_theta)) == 1


def test_unbounded_separation_is_refused():
    """Test that cos theta = 1 has no finite maximum."""
    with pytest.raises(UnboundedSearchError):
        search_max_code(3, 2, SeparationSpec(cos_theta=Fraction(1)))


def test_level_override_uses_loosest_separation():
    """Test the --level path of the search."""
    outcome = search_max_code(3, 2, KISSING, level_override=1)
    assert outcome.level.level == 1
    assert outcome.spec == loosest_spec(3, 1)
    assert outcome.spec.bound == Fraction(1, 3)


def test_search_respects_budget():
    """Test that a large residue space stops with a budget error."""
    with pytest.raises(ResourceBudgetError):
        search_max_code(7, 3, KISSING, level_override=2, budget=10_000)


def test_search_is_deterministic_across_threads():
    """Test identical sizes and witnesses for 1, 2 and 8 threads."""
    witnesses = set()
    for threads in (1, 2, 8):
        outcome = search_max_code(5, 2, loosest_spec(5, 1), threads=threads)
        witnesses.add((outcome.size, tuple(v.values for v in outcome.code.vectors)))
    assert len(witnesses) == 1


def test_dyadic_lower_bound_is_a_valid_code():
    """Test that p = 2 mode returns a genuine code flagged as a lower bound."""
    spec = SeparationSpec(cos_theta=Fraction(3, 4))
    outcome = search_max_code(2, 2, spec)
    assert outcome.lower_bound_only
    assert outcome.size >= 2
    assert validate_code(outcome.code).valid


def test_dyadic_infeasible_separation():
    """Test that b > 1/2 is infeasible for p = 2."""
    outcome = dyadic_lower_bound(2, KISSING)
    assert outcome.size == 1
    assert outcome.lower_bound_only


def test_loosest_spec_halves_for_p2():
    """Test the |2|_2 factor in the loosest threshold."""
    assert loosest_spec(2, 0).bound == Fraction(1, 2)
    assert loosest_spec(3, 2).bound == Fraction(1, 9)
