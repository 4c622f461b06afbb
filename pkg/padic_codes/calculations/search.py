"""Maximal p-adic spherical codes: clique search, witness lifting and oracle."""

from __future__ import annotations

import itertools
import logging
import time
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from padic_codes.calculations.clique import CliqueResult, max_clique, solve_max_clique
from padic_codes.calculations.codes import (
    CodeVariant,
    EffectiveLevel,
    LevelStatus,
    PAdicCode,
    SeparationSpec,
    Verdict,
    effective_level,
)
from padic_codes.calculations.padic import (
    PAdicVector,
    Prime,
    abs_p,
    as_prime,
    padic_inner_product,
)
from padic_codes.calculations.residue_graph import (
    Residue,
    ResidueSphereGraph,
    build_residue_graph,
    centred,
    hensel_lift,
)
from padic_codes.core.config import settings
from padic_codes.core.errors import (
    ResourceBudgetError,
    UnboundedSearchError,
    UnsupportedPrimeError,
)

logger = logging.getLogger(__name__)


def loosest_spec(p: "Prime | int", level: int) -> SeparationSpec:
    """Separation with ``b = |2|_p p^(-level)``, the weakest threshold of that level."""
    b = Fraction(1, int(p) ** level)
    if int(p) == 2:
        b /= 2
    return SeparationSpec(cos_theta=1 - b / 2)


def lift_clique_to_code(
    graph: ResidueSphereGraph,
    witness: Sequence[Residue],
    precision: int | None = None,
    spec: SeparationSpec | None = None,
) -> PAdicCode:
    """Hensel-lift each witness vertex to ``p^precision`` and build the code.

    Coordinates use centred representatives, so a lift that is exact over Q
    (for instance ``(-1, 0)``) yields an exact code; otherwise the code checks
    condition (ii) modulo ``p^precision``.
    """
    precision = settings.lift_precision if precision is None else precision
    if precision < graph.level + 1:
        raise ValueError(
            f"precision {precision} is below the graph modulus p^{graph.level + 1}"
        )
    if not witness:
        raise ValueError("empty witness")
    if not graph.is_clique([graph.vertices.index(tuple(w)) for w in witness]):
        raise ValueError("witness is not a clique of the graph")
    spec = loosest_spec(graph.prime, graph.level) if spec is None else spec
    modulus = graph.prime**precision
    vectors = []
    exact = True
    for vertex in witness:
        lifted = hensel_lift(vertex, graph.prime, graph.level + 1, precision)
        entries = [centred(v, modulus) for v in lifted]
        vector = PAdicVector.of(entries, graph.prime)
        if padic_inner_product(vector, vector).value != 1:
            exact = False
        vectors.append(vector)
    variant = CodeVariant() if exact else CodeVariant().with_precision(precision)
    return PAdicCode(graph.prime, graph.dim, tuple(vectors), spec, variant)


def unit_code(p: "Prime | int", dim: int, spec: SeparationSpec) -> PAdicCode:
    """The single-vector code ``{e_1}``."""
    e1 = PAdicVector.of([1] + [0] * (dim - 1), p)
    return PAdicCode(as_prime(p), dim, (e1,), spec)


def kissing_number(
    p: "Prime | int", dim: int, threads: int = 1, budget: int | None = None
) -> CliqueResult:
    """Exact p-adic kissing number: max clique of the level-0 graph.

    Args:
        p: Odd prime.
        dim: Ambient dimension d.
        threads: Worker threads for the clique search.
        budget: Cap on residue tuples; defaults to ``settings.enumeration_budget``.

    Returns:
        CliqueResult whose ``size`` is the kissing number.

    Raises:
        UnsupportedPrimeError: If p = 2.
        ResourceBudgetError: If ``p^d`` exceeds the budget.
    """
    prime = as_prime(p)
    if not prime.is_odd:
        raise UnsupportedPrimeError(
            "p = 2 has no exact kissing solver; use the lower-bound mode"
        )
    return max_clique(build_residue_graph(prime, dim, 0, budget), threads)


@dataclass
class SearchOutcome:
    prime: int
    dim: int
    spec: SeparationSpec
    level: EffectiveLevel
    size: int
    code: PAdicCode
    lower_bound_only: bool = False
    vertices: int = 0
    edges: int = 0
    node_count: int = 0
    millis: int = 0

    @property
    def exact_code(self) -> bool:
        return self.code.variant.self_product_precision is None


def search_max_code(
    p: "Prime | int",
    dim: int,
    spec: SeparationSpec,
    *,
    level_override: int | None = None,
    precision: int | None = None,
    budget: int | None = None,
    threads: int = 1,
) -> SearchOutcome:
    """Largest p-adic code for ``spec`` with a witness.

    Args:
        p: Prime; p = 2 falls back to the rational-point lower bound.
        dim: Ambient dimension d.
        spec: Separation requirement.
        level_override: Replaces the level derived from ``spec`` and uses the
            loosest separation of that level instead.
        precision: Hensel lift precision of the witness; defaults to
            ``settings.lift_precision``.
        budget: Cap on residue tuples; defaults to ``settings.enumeration_budget``.
        threads: Worker threads for the clique search.

    Returns:
        SearchOutcome with the size, the witness code and search statistics.

    Raises:
        UnboundedSearchError: If cos theta = 1.
        ResourceBudgetError: If the residue enumeration exceeds ``budget``.
        ValueError: If ``level_override`` is negative.
    """
    started = time.perf_counter()
    prime = as_prime(p)
    if level_override is not None:
        if level_override < 0:
            raise ValueError("level must be non-negative")
        spec = loosest_spec(prime.value, level_override)
        level = EffectiveLevel(LevelStatus.FINITE, level_override)
    else:
        level = effective_level(spec, prime)

    if not prime.is_odd:
        outcome = dyadic_lower_bound(dim, spec, threads=threads)
    elif level.status is LevelStatus.UNBOUNDED:
        raise UnboundedSearchError(
            "cos theta = 1 admits every pair of vectors; there is no finite maximum"
        )
    elif level.status is LevelStatus.INFEASIBLE:
        logger.info("separation %s is infeasible for p=%d", spec.describe(), prime.value)
        outcome = SearchOutcome(
            prime.value, dim, spec, level, 1, unit_code(prime, dim, spec)
        )
    else:
        graph = build_residue_graph(prime, dim, level.level, budget)
        clique = max_clique(graph, threads)
        code = lift_clique_to_code(graph, clique.witness, precision, spec)
        outcome = SearchOutcome(
            prime=prime.value,
            dim=dim,
            spec=spec,
            level=level,
            size=clique.size,
            code=code,
            vertices=graph.order,
            edges=graph.edge_count,
            node_count=clique.node_count,
        )
    outcome.millis = int((time.perf_counter() - started) * 1000)
    return outcome


def _oracle_points(p: int, dim: int, modulus: int, budget: int) -> list[Residue]:
    total = modulus**dim
    if total > budget:
        raise ResourceBudgetError(
            f"oracle needs {total} residue tuples, budget is {budget}"
        )
    return [
        x
        for x in itertools.product(range(modulus), repeat=dim)
        if sum(v * v for v in x) % modulus == 1
    ]


def exhaustive_max_code(
    p: "Prime | int",
    dim: int,
    spec: SeparationSpec,
    budget: int | None = None,
    node_budget: int | None = None,
) -> int:
    """Reference answer by subset enumeration over the residue points.

    Independent of the clique solver: points come from ``itertools``, pairs
    are judged by evaluating ``|2 - 2<x, y>|_p`` against the threshold, and
    the search has no colouring bound. Points with identical admissible
    neighbourhoods are interchangeable, so one per such class is kept; a
    branch stops once the chosen points plus the remaining admissible
    candidates cannot beat the best subset found.

    Args:
        p: Odd prime.
        dim: Ambient dimension d.
        spec: Separation requirement.
        budget: Cap on the ``p^((m+1)d)`` residue tuples enumerated;
            defaults to ``settings.enumeration_budget``.
        node_budget: Cap on visited subsets; defaults to
            ``settings.oracle_node_budget``.

    Returns:
        The largest admissible subset size.

    Raises:
        UnsupportedPrimeError: If p = 2.
        UnboundedSearchError: If the separation admits every pair.
        ResourceBudgetError: If either budget is exceeded.
    """
    prime = as_prime(p)
    if not prime.is_odd:
        raise UnsupportedPrimeError("the oracle covers odd primes only")
    level = effective_level(spec, prime)
    if level.status is LevelStatus.INFEASIBLE:
        return 1
    if level.status is LevelStatus.UNBOUNDED:
        raise UnboundedSearchError("no finite maximum for b = 0")
    budget = settings.enumeration_budget if budget is None else budget
    node_budget = settings.oracle_node_budget if node_budget is None else node_budget

    points = _oracle_points(prime.value, dim, prime.value ** (level.level + 1), budget)
    coords = np.array(points, dtype=np.int64)
    products, inverse = np.unique((coords @ coords.T).ravel(), return_inverse=True)
    verdicts = np.array(
        [spec.admits(abs_p(2 - 2 * int(t), prime)) is Verdict.PASS for t in products]
    )
    admissible = verdicts[inverse].reshape(len(points), len(points))
    np.fill_diagonal(admissible, False)

    kept: dict[bytes, int] = {}
    for i, row in enumerate(admissible):
        kept.setdefault(row.tobytes(), i)
    representatives = list(kept.values())
    neighbours = []
    for i in representatives:
        mask = 0
        for j, other in enumerate(representatives):
            if admissible[i, other]:
                mask |= 1 << j
        neighbours.append(mask)

    best = 0
    visited = 0

    def extend(size: int, candidates: int):
        nonlocal best, visited
        visited += 1
        if visited > node_budget:
            raise ResourceBudgetError(f"oracle exceeded {node_budget} subsets")
        best = max(best, size)
        while candidates:
            if size + candidates.bit_count() <= best:
                return
            low = candidates & -candidates
            candidates ^= low
            extend(size + 1, candidates & neighbours[low.bit_length() - 1])

    extend(0, (1 << len(representatives)) - 1)
    logger.info(
        "✓ oracle p=%d d=%d: %d points, %d classes, %d subsets",
        prime.value,
        dim,
        len(points),
        len(representatives),
        visited,
    )
    return best


def _stereographic_points(dim: int, radius: int) -> set[tuple[Fraction, ...]]:
    points: set[tuple[Fraction, ...]] = set()
    for t in itertools.product(range(-radius, radius + 1), repeat=dim - 1):
        s = sum(v * v for v in t)
        if s % 2:
            # 1 + s must be odd for the entries to lie in Z_2
            continue
        base = (Fraction(1 - s, 1 + s),) + tuple(Fraction(2 * v, 1 + s) for v in t)
        for perm in itertools.permutations(base):
            for signs in itertools.product((1, -1), repeat=dim):
                points.add(tuple(sg * v for sg, v in zip(signs, perm)))
    return points


def dyadic_lower_bound(
    dim: int,
    spec: SeparationSpec,
    radius: int | None = None,
    threads: int = 1,
) -> SearchOutcome:
    """Lower bound for p = 2 from exact rational sphere points.

    Points are ``((1 - |t|^2), 2t) / (1 + |t|^2)`` for integer t with
    ``|t|^2`` even, under coordinate permutations and sign changes. They
    satisfy (i) and (ii) exactly, so any clique is a genuine code; the
    maximum over this finite pool is only a lower bound.
    """
    prime = Prime(2)
    level = effective_level(spec, prime)
    if level.status is LevelStatus.UNBOUNDED:
        raise UnboundedSearchError("no finite maximum for b = 0")
    if level.status is LevelStatus.INFEASIBLE:
        return SearchOutcome(
            2, dim, spec, level, 1, unit_code(prime, dim, spec), lower_bound_only=True
        )
    radius = settings.dyadic_radius if radius is None else radius
    pool = sorted(_stereographic_points(dim, radius))
    if len(pool) ** 2 > settings.enumeration_budget:
        raise ResourceBudgetError(
            f"{len(pool)} candidate points exceed the enumeration budget"
        )
    vectors = [PAdicVector.of(point, prime) for point in pool]
    n = len(vectors)
    adjacency = np.zeros((n, n), dtype=bool)
    for i in range(n):
        for j in range(i + 1, n):
            t = padic_inner_product(vectors[i], vectors[j]).value
            if spec.admits(abs_p(2 - 2 * t, prime)) is Verdict.PASS:
                adjacency[i, j] = adjacency[j, i] = True
    size, indices, nodes = solve_max_clique(adjacency, threads)
    code = PAdicCode(prime, dim, tuple(vectors[i] for i in indices), spec)
    return SearchOutcome(
        prime=2,
        dim=dim,
        spec=spec,
        level=level,
        size=size,
        code=code,
        lower_bound_only=True,
        vertices=n,
        edges=int(np.count_nonzero(adjacency)) // 2,
        node_count=nodes,
    )
