"""Residue-sphere graphs and Hensel lifting.

For odd p, conditions (i) and (ii) force code entries into Z_p, and (PE) at
level m becomes ``<x, y> != 1 (mod p^(m+1))``. Reducing a code modulo
``M = p^(m+1)`` therefore gives a clique in the graph whose vertices are the
solutions of ``sum x_j^2 = 1 (mod M)`` and whose edges join pairs with
``x.y != 1 (mod M)``. Conversely every vertex lifts to a point of the sphere
(Hensel), so maximum cliques and maximal codes have the same size. This
reduction is a derived result and the test suite checks it against an
exhaustive oracle.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Sequence

import networkx as nx
import numpy as np

from padic_codes.calculations.padic import Prime, as_prime
from padic_codes.core.config import settings
from padic_codes.core.errors import (
    HenselLiftError,
    ResourceBudgetError,
    UnsupportedPrimeError,
)

logger = logging.getLogger(__name__)

Residue = tuple[int, ...]


@dataclass(frozen=True, eq=False)
class ResidueSphereGraph:
    """Sphere solutions modulo ``p^(level+1)`` with the level's admissibility edges.

    ``vertices`` are sorted lexicographically; ``adjacency`` is a symmetric
    boolean matrix with an empty diagonal.
    """

    prime: int
    dim: int
    level: int
    modulus: int
    vertices: tuple[Residue, ...]
    adjacency: np.ndarray

    @property
    def order(self) -> int:
        return len(self.vertices)

    @property
    def edge_count(self) -> int:
        return int(np.count_nonzero(self.adjacency)) // 2

    def neighbour_masks(self) -> list[int]:
        """Adjacency rows as Python-int bitsets (bit i = vertex i)."""
        return pack_rows(self.adjacency)

    def fibre_labels(self) -> tuple[int, ...] | None:
        """Label of each vertex's residue modulo ``p^level``, or None at level 0.

        Two lifts ``a + p^level w`` and ``a + p^level w'`` of one residue have
        inner product 1 modulo ``p^(level+1)``, so each fibre is an independent
        set and a clique meets it at most once.
        """
        if self.level == 0:
            return None
        low = self.prime**self.level
        seen: dict[Residue, int] = {}
        return tuple(
            seen.setdefault(tuple(v % low for v in x), len(seen)) for x in self.vertices
        )

    def is_clique(self, indices: Sequence[int]) -> bool:
        for a, i in enumerate(indices):
            for j in indices[a + 1 :]:
                if not self.adjacency[i, j]:
                    return False
        return True

    def to_networkx(self) -> nx.Graph:
        graph = nx.Graph()
        graph.add_nodes_from(range(self.order))
        rows, cols = np.nonzero(np.triu(self.adjacency, k=1))
        graph.add_edges_from(zip(rows.tolist(), cols.tolist()))
        return graph


def pack_rows(matrix: np.ndarray) -> list[int]:
    """Rows of a boolean matrix as Python-int bitsets (bit i = column i)."""
    masks = []
    for row in matrix:
        packed = np.packbits(row.astype(np.uint8), bitorder="little")
        masks.append(int.from_bytes(packed.tobytes(), "little"))
    return masks


def _check_budget(p: int, dim: int, level: int, budget: int) -> int:
    modulus = p ** (level + 1)
    tuples = modulus**dim
    if tuples > budget:
        raise ResourceBudgetError(
            f"enumerating (Z/{modulus})^{dim} needs {tuples} tuples, budget is {budget}"
        )
    return modulus


def sphere_residues(
    p: "Prime | int", dim: int, level: int, budget: int | None = None
) -> np.ndarray:
    """All x in (Z/p^(level+1))^dim with ``sum x_j^2 = 1``, lexicographic order."""
    p = int(as_prime(p))
    if dim < 1:
        raise ValueError("dimension must be at least 1")
    if level < 0:
        raise ValueError("level must be non-negative")
    budget = settings.enumeration_budget if budget is None else budget
    modulus = _check_budget(p, dim, level, budget)
    grid = np.indices((modulus,) * dim, dtype=np.int64).reshape(dim, -1).T
    mask = (grid * grid).sum(axis=1) % modulus == 1
    return grid[mask]


def build_residue_graph(
    p: "Prime | int", dim: int, level: int, budget: int | None = None
) -> ResidueSphereGraph:
    """Enumerate the residue sphere exhaustively and join admissible pairs.

    Args:
        p: Odd prime.
        dim: Ambient dimension d.
        level: Level m; the modulus is ``p^(m+1)``.
        budget: Cap on ``p^((m+1)d)`` residue tuples; defaults to
            ``settings.enumeration_budget``.

    Returns:
        ResidueSphereGraph with lexicographically sorted vertices.

    Raises:
        UnsupportedPrimeError: If p = 2.
        ResourceBudgetError: If the enumeration exceeds ``budget``.
    """
    prime = as_prime(p)
    if not prime.is_odd:
        raise UnsupportedPrimeError("the exact residue reduction needs an odd prime")
    points = sphere_residues(prime, dim, level, budget)
    modulus = prime.value ** (level + 1)
    gram = (points @ points.T) % modulus
    adjacency = gram != 1
    np.fill_diagonal(adjacency, False)
    graph = ResidueSphereGraph(
        prime=prime.value,
        dim=dim,
        level=level,
        modulus=modulus,
        vertices=tuple(tuple(int(x) for x in row) for row in points),
        adjacency=adjacency,
    )
    logger.info(
        "✓ residue graph p=%d d=%d level=%d: %d vertices, %d edges",
        prime.value,
        dim,
        level,
        graph.order,
        graph.edge_count,
    )
    return graph


def hensel_lift(
    x: Sequence[int], p: "Prime | int", precision: int, target: int
) -> Residue:
    """Lift a sphere point mod ``p^precision`` to one mod ``p^target``.

    Only the first unit coordinate j moves: Newton steps on
    ``f(t) = t^2 - (1 - sum_{i != j} x_i^2)``. The result agrees with x
    modulo ``p^precision`` and lies in ``[0, p^target)``.
    """
    prime = as_prime(p)
    if not prime.is_odd:
        raise UnsupportedPrimeError("Hensel lifting here needs an odd prime")
    if target < precision or precision < 1:
        raise HenselLiftError(
            f"cannot lift from precision {precision} to {target}"
        )
    p = prime.value
    low = p**precision
    if sum(v * v for v in x) % low != 1 % low:
        raise HenselLiftError(f"{tuple(x)} is not on the sphere mod {p}^{precision}")
    units = [j for j, v in enumerate(x) if v % p != 0]
    if not units:
        raise HenselLiftError(f"{tuple(x)} has no unit coordinate")
    j = units[0]
    high = p**target
    y = [v % high for v in x]
    rest = (1 - sum(v * v for i, v in enumerate(y) if i != j)) % high
    t = y[j]
    # quadratic convergence; each step at least doubles the p-adic precision
    reached = precision
    while True:
        f = (t * t - rest) % high
        if f == 0 or reached >= target:
            break
        t = (t - f * pow(2 * t, -1, high)) % high
        reached *= 2
    if (t * t - rest) % high != 0:
        raise HenselLiftError(f"Newton iteration failed for {tuple(x)}")
    y[j] = t
    return tuple(y)


def centred(value: int, modulus: int) -> int:
    """Representative of ``value mod modulus`` in ``(-modulus/2, modulus/2]``."""
    value %= modulus
    return value - modulus if 2 * value > modulus else value
