"""Seeded random instances for verification campaigns and tests."""

import numpy as np

from .errors import DisconnectedGraph
from .graphs import Graph, build_graph
from .operators import SchrodingerOperator, random_operator

ER_RETRIES = 50


def random_connected_graph(
    rng: np.random.Generator, max_vertices: int, max_extra_edges: int
) -> Graph:
    """Connected graph with a seeded vertex count and cycle budget.

    Erdos-Renyi with the edge probability tuned to the target edge count,
    rejecting disconnected draws; after the retry cap a random spanning
    tree plus random chords guarantees progress.
    """
    num_vertices = int(rng.integers(3, max_vertices + 1))
    slots = num_vertices * (num_vertices - 1) // 2
    beta_cap = min(max_extra_edges, slots - (num_vertices - 1))
    beta_target = int(rng.integers(0, beta_cap + 1))
    target_edges = (num_vertices - 1) + beta_target
    all_pairs = [
        (u, v) for u in range(num_vertices) for v in range(u + 1, num_vertices)
    ]
    p = min(1.0, target_edges / slots)
    for _ in range(ER_RETRIES):
        mask = rng.random(slots) < p
        edges = [pair for pair, keep in zip(all_pairs, mask) if keep]
        if len(edges) != target_edges:
            continue  # keep the cycle count on budget
        try:
            return build_graph(num_vertices, edges)
        except DisconnectedGraph:
            continue
    # deterministic fallback: random tree plus chords
    order = rng.permutation(num_vertices)
    edges = set()
    for i in range(1, num_vertices):
        attach = order[rng.integers(0, i)]
        u, v = int(order[i]), int(attach)
        edges.add((min(u, v), max(u, v)))
    spare = [pair for pair in all_pairs if pair not in edges]
    rng.shuffle(spare)
    edges.update(spare[:beta_target])
    return build_graph(num_vertices, sorted(edges))


def random_instance(
    rng: np.random.Generator, max_vertices: int, max_extra_edges: int
) -> SchrodingerOperator:
    g = random_connected_graph(rng, max_vertices, max_extra_edges)
    return random_operator(g, rng)


def random_bipartite_operator(
    rng: np.random.Generator, max_part: int = 4, max_extra_edges: int = 4
) -> SchrodingerOperator:
    """Connected bipartite instance: a two-colored random tree plus extra
    edges drawn only across the parts."""
    size_a = int(rng.integers(1, max_part + 1))
    size_b = int(rng.integers(1, max_part + 1))
    if size_a + size_b < 3:
        size_b = 3 - size_a
    part = np.array([0] * size_a + [1] * size_b)
    n = size_a + size_b
    order = [int(x) for x in rng.permutation(n)]
    edges = set()
    placed = [order[0]]
    unplaced = order[1:]
    while unplaced:
        # attach the first unplaced vertex that can cross the parts
        pick = next(
            i
            for i, v in enumerate(unplaced)
            if any(part[u] != part[v] for u in placed)
        )
        v = unplaced.pop(pick)
        partners = [u for u in placed if part[u] != part[v]]
        u = partners[rng.integers(0, len(partners))]
        edges.add((min(u, v), max(u, v)))
        placed.append(v)
    cross = [
        (u, v)
        for u in range(n)
        for v in range(u + 1, n)
        if part[u] != part[v] and (u, v) not in edges
    ]
    rng.shuffle(cross)
    extra = int(rng.integers(0, min(max_extra_edges, len(cross)) + 1))
    edges.update(cross[:extra])
    g = build_graph(n, sorted(edges))
    return random_operator(g, rng)
