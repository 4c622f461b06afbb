"""Exact maximum clique by branch and bound with greedy-colouring bounds.

The graph is first split along the connected components of its complement:
vertices in different components are all adjacent, so the clique number is
the sum over components and the witness is the union of their witnesses.

Inside a component the search runs in two phases. Phase one finds the clique
number with the colour-ordered scheme (candidates coloured in degeneracy
order, expanded from the highest colour down, pruned when
``|C| + colour <= best``); root branches may run on several threads and share
a monotone best size. A caller may also pass a partition of the vertices into
independent sets, and each node then uses whichever colouring has fewer
colours. Phase two walks the vertices in lexicographic order and returns the
first clique of that size, so the witness is the lexicographically least
maximum clique whatever the scheduling.
"""

from __future__ import annotations

import logging
import threading
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from padic_codes.calculations.residue_graph import ResidueSphereGraph, pack_rows
from padic_codes.core.errors import ConsistencyError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class CliqueResult:
    """A maximum clique; ``node_count`` depends on scheduling when threads > 1."""

    size: int
    indices: tuple[int, ...]
    witness: tuple[tuple, ...]
    node_count: int


def _bits(mask: int):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def degeneracy_order(adjacency: np.ndarray) -> list[int]:
    """Smallest-last order: repeatedly drop a minimum-degree vertex (lowest index on ties)."""
    n = adjacency.shape[0]
    degree = adjacency.sum(axis=1).astype(np.int64)
    alive = np.ones(n, dtype=bool)
    removed = []
    for _ in range(n):
        candidates = np.where(alive, degree, np.iinfo(np.int64).max)
        v = int(np.argmin(candidates))
        removed.append(v)
        alive[v] = False
        degree -= adjacency[v].astype(np.int64)
    return removed[::-1]


def complement_components(adjacency: np.ndarray) -> list[list[int]]:
    """Connected components of the complement graph, each sorted, by least vertex."""
    order = adjacency.shape[0]
    everything = (1 << order) - 1
    missing = [
        everything & ~row & ~(1 << v) for v, row in enumerate(pack_rows(adjacency))
    ]
    components = []
    unseen = everything
    while unseen:
        component = frontier = unseen & -unseen
        while frontier:
            reach = 0
            for v in _bits(frontier):
                reach |= missing[v]
            frontier = reach & ~component
            component |= frontier
        unseen &= ~component
        components.append(list(_bits(component)))
    return components


class _SharedBest:
    def __init__(self, size: int = 0):
        self._lock = threading.Lock()
        self.size = size

    def offer(self, size: int):
        with self._lock:
            if size > self.size:
                self.size = size


def _colour_classes(candidates: int, adj: list[int]) -> list[tuple[int, int]]:
    """Greedy colouring in bit order; returns (vertex, colour) by ascending colour."""
    ordered = []
    uncoloured = candidates
    colour = 0
    while uncoloured:
        colour += 1
        available = uncoloured
        while available:
            low = available & -available
            v = low.bit_length() - 1
            available &= ~adj[v] & ~low
            uncoloured &= ~low
            ordered.append((v, colour))
    return ordered


def _partition_classes(candidates: int, partition: list[int]) -> list[tuple[int, int]]:
    ordered = []
    colour = 0
    for members in partition:
        members &= candidates
        if members:
            colour += 1
            ordered.extend((v, colour) for v in _bits(members))
    return ordered


def _colouring(
    candidates: int, adj: list[int], partition: list[int] | None
) -> list[tuple[int, int]]:
    ordered = _colour_classes(candidates, adj)
    if partition and ordered:
        fixed = _partition_classes(candidates, partition)
        if fixed[-1][1] < ordered[-1][1]:
            return fixed
    return ordered


def _partition_masks(labels: Sequence[int]) -> list[int]:
    masks: dict[int, int] = {}
    for v, label in enumerate(labels):
        masks[label] = masks.get(label, 0) | (1 << v)
    return list(masks.values())


def _expand(
    size: int,
    candidates: int,
    adj: list[int],
    partition: list[int] | None,
    best: _SharedBest,
    counter: list[int],
):
    counter[0] += 1
    ordered = _colouring(candidates, adj, partition)
    for v, colour in reversed(ordered):
        if size + colour <= best.size:
            return
        new_size = size + 1
        narrowed = candidates & adj[v]
        if narrowed:
            _expand(new_size, narrowed, adj, partition, best, counter)
        else:
            best.offer(new_size)
        candidates &= ~(1 << v)


def _clique_number(
    order: int, adj_ranked: list[int], threads: int, partition: list[int] | None
) -> tuple[int, int]:
    best = _SharedBest(1 if order else 0)
    everything = (1 << order) - 1
    ordered = _colouring(everything, adj_ranked, partition)

    roots = []
    remaining = everything
    for v, colour in reversed(ordered):
        roots.append((v, colour, remaining & adj_ranked[v]))
        remaining &= ~(1 << v)

    def run(root) -> int:
        v, colour, candidates = root
        counter = [0]
        if colour <= best.size:
            return 0
        if candidates:
            _expand(1, candidates, adj_ranked, partition, best, counter)
        return counter[0]

    if threads <= 1:
        nodes = sum(run(root) for root in roots)
    else:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            nodes = sum(pool.map(run, roots))
    return best.size, nodes + 1


def _first_clique(
    target: int, adj: list[int], order: int, partition: list[int] | None
) -> tuple[tuple[int, ...], int]:
    counter = [0]

    def colour_bound(candidates: int) -> int:
        ordered = _colouring(candidates, adj, partition)
        return ordered[-1][1] if ordered else 0

    def search(chosen: list[int], candidates: int):
        counter[0] += 1
        if len(chosen) == target:
            return tuple(chosen)
        if len(chosen) + colour_bound(candidates) < target:
            return None
        for v in _bits(candidates):
            higher = candidates & ~((1 << (v + 1)) - 1)
            found = search(chosen + [v], higher & adj[v])
            if found is not None:
                return found
        return None

    found = search([], (1 << order) - 1)
    if found is None:
        raise ConsistencyError(f"no clique of size {target} on the second pass")
    return found, counter[0]


def _solve_component(
    adjacency: np.ndarray, threads: int, labels: Sequence[int] | None
) -> tuple[int, tuple[int, ...], int]:
    order = adjacency.shape[0]
    if order == 1:
        return 1, (0,), 1
    adj = pack_rows(adjacency)

    # relabel so that bit order is the colouring (degeneracy) order
    ranking = degeneracy_order(adjacency)
    adj_ranked = pack_rows(adjacency[np.ix_(ranking, ranking)])
    partition = ranked = None
    if labels is not None:
        partition = _partition_masks(labels)
        ranked = _partition_masks([labels[v] for v in ranking])

    size, nodes = _clique_number(order, adj_ranked, threads, ranked)
    indices, second = _first_clique(size, adj, order, partition)
    return size, indices, nodes + second


def _check_labels(adjacency: np.ndarray, labels: Sequence[int]):
    if len(labels) != adjacency.shape[0]:
        raise ValueError(
            f"{len(labels)} class labels for {adjacency.shape[0]} vertices"
        )
    for members in _partition_masks(labels):
        indices = list(_bits(members))
        if adjacency[np.ix_(indices, indices)].any():
            raise ValueError("every class of the partition must be an independent set")


def solve_max_clique(
    adjacency: np.ndarray,
    threads: int = 1,
    labels: Sequence[int] | None = None,
) -> tuple[int, tuple[int, ...], int]:
    """Clique number, lexicographically least maximum clique and node count.

    Args:
        adjacency: Symmetric boolean matrix with an empty diagonal.
        threads: Worker threads for the root branches of phase one.
        labels: Optional class label per vertex; vertices sharing a label
            must be pairwise non-adjacent. The classes give a colouring bound
            next to the greedy one.

    Returns:
        Tuple of (clique number, sorted vertex indices of the witness,
        branch-and-bound nodes visited).

    Raises:
        ValueError: If the graph is empty or ``labels`` is not a partition
            into independent sets.
    """
    order = adjacency.shape[0]
    if order == 0:
        raise ValueError("max_clique needs at least one vertex")
    if labels is not None:
        _check_labels(adjacency, labels)

    components = complement_components(adjacency)
    size = 0
    nodes = 0
    indices: list[int] = []
    for component in components:
        part = adjacency[np.ix_(component, component)]
        part_labels = None if labels is None else [labels[v] for v in component]
        found, local, count = _solve_component(part, threads, part_labels)
        size += found
        nodes += count
        indices.extend(component[i] for i in local)
    logger.info(
        "✓ max clique %d on %d vertices (%d component(s), %d nodes, %d thread(s))",
        size,
        order,
        len(components),
        nodes,
        threads,
    )
    return size, tuple(sorted(indices)), nodes


def max_clique(graph: ResidueSphereGraph, threads: int = 1) -> CliqueResult:
    """Exact maximum clique with the lexicographically least witness.

    Args:
        graph: Residue-sphere graph; its fibres over ``p^level`` serve as
            the fixed colouring.
        threads: Worker threads for phase one.

    Returns:
        CliqueResult with the clique number, the witness indices and residues,
        and the node count.
    """
    size, indices, nodes = solve_max_clique(
        graph.adjacency, threads, graph.fibre_labels()
    )
    return CliqueResult(
        size=size,
        indices=indices,
        witness=tuple(graph.vertices[i] for i in indices),
        node_count=nodes,
    )
