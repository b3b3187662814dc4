"""Deterministic constructors for the benchmark graph families, plus
seeded uniform random trees for property tests.
"""

from __future__ import annotations

import random

from .graph import Graph, from_edge_list


def gen_path(n: int) -> Graph:
    return from_edge_list([(i, i + 1) for i in range(1, n)], n)


def gen_star(n: int) -> Graph:
    """Center 1 with leaves 2..n."""
    return from_edge_list([(1, i) for i in range(2, n + 1)], n)


def gen_fig1() -> Graph:
    """7-vertex graph with three leaf twins at a hub and a 4-cycle."""
    return from_edge_list(
        [(1, 4), (2, 4), (3, 4), (4, 5), (5, 6), (6, 7), (4, 7)], 7
    )


def gen_fig5() -> Graph:
    """The 15-vertex benchmark tree."""
    return from_edge_list(
        [(1, 2), (2, 3), (3, 4), (4, 5), (5, 6), (5, 7), (2, 8), (8, 15),
         (3, 9), (9, 13), (13, 14), (9, 10), (10, 11), (11, 12)],
        15,
    )


def gen_dsfn(g: int) -> Graph:
    """Deterministic scale-free network D(g) on 3^g vertices.

    D(0) is a single root. Each step keeps the current graph as the main
    copy and adds two fresh copies, joining every bottom-level vertex of
    the copies to the main root; the new bottom level is the union of the
    copies' bottom levels.
    """
    if g < 0:
        raise ValueError("g must be >= 0")
    edges, bottom, n = [], [1], 1
    for _ in range(g):
        shifted = (
            [(u + n, v + n) for u, v in edges]
            + [(u + 2 * n, v + 2 * n) for u, v in edges]
        )
        new_bottom = [v + n for v in bottom] + [v + 2 * n for v in bottom]
        edges = edges + shifted + [(1, v) for v in new_bottom]
        bottom, n = new_bottom, 3 * n
    return from_edge_list(edges, n)


def gen_cayley(g: int) -> Graph:
    """Cayley tree C(g) on 3 * 2^g - 2 vertices.

    C(1) is a center with 3 leaves; each further generation attaches two
    fresh children to every pendant, labels assigned in pendant order.
    """
    if g < 1:
        raise ValueError("g must be >= 1")
    edges = [(1, 2), (1, 3), (1, 4)]
    n = 4
    pendants = [2, 3, 4]
    for _ in range(g - 1):
        fresh = []
        for p in pendants:
            edges += [(p, n + 1), (p, n + 2)]
            fresh += [n + 1, n + 2]
            n += 2
        pendants = fresh
    return from_edge_list(edges, n)


def gen_random_tree(n: int, seed) -> Graph:
    """Uniform random labeled tree (random parent-sequence decoding)."""
    if n < 1:
        raise ValueError("n must be >= 1")
    if n == 1:
        return from_edge_list([], 1)
    if n == 2:
        return from_edge_list([(1, 2)], 2)
    rng = random.Random(seed)
    seq = [rng.randint(1, n) for _ in range(n - 2)]
    # decode the parent sequence: repeatedly join the smallest leaf
    degree = [1] * (n + 1)
    for v in seq:
        degree[v] += 1
    edges = []
    import heapq

    leaves = [v for v in range(1, n + 1) if degree[v] == 1]
    heapq.heapify(leaves)
    for v in seq:
        leaf = heapq.heappop(leaves)
        edges.append((leaf, v))
        degree[v] -= 1
        if degree[v] == 1:
            heapq.heappush(leaves, v)
    u, w = sorted(leaves)[:2]
    edges.append((u, w))
    return from_edge_list(edges, n)
