"""Immutable undirected simple graphs with integer labels 1..n.

All public APIs speak 1-based vertex labels (matching the usual drawing
conventions for small benchmark graphs); matrix builders map label ``v`` to
row/column ``v - 1``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, NamedTuple

import numpy as np

from .errors import DuplicateEdge, LabelOutOfRange, SelfLoop


@dataclass(frozen=True)
class Graph:
    """Undirected simple graph on vertices 1..n.

    ``adjacency[v - 1]`` is the sorted tuple of neighbors of vertex ``v``.
    Instances are immutable and safe to share.
    """

    n: int
    edges: frozenset
    adjacency: tuple

    def neighbors(self, v: int) -> tuple:
        _check_label(self, v)
        return self.adjacency[v - 1]

    def degree(self, v: int) -> int:
        return len(self.neighbors(v))

    @property
    def m(self) -> int:
        return len(self.edges)

    def has_edge(self, u: int, v: int) -> bool:
        return (min(u, v), max(u, v)) in self.edges

    def vertices(self) -> range:
        return range(1, self.n + 1)

    def __repr__(self) -> str:  # pragma: no cover
        return f"Graph(n={self.n}, m={self.m})"


class InducedSubgraph(NamedTuple):
    graph: Graph
    parent_labels: tuple  # parent_labels[i] = label in the parent of vertex i+1


def _check_label(g: Graph, v: int) -> None:
    if not (isinstance(v, (int, np.integer)) and 1 <= v <= g.n):
        raise LabelOutOfRange(f"vertex label {v!r} outside 1..{g.n}")


def from_edge_list(pairs: Iterable, n: int) -> Graph:
    """Build a graph from unordered label pairs; rejects loops and repeats."""
    seen = set()
    adj = [[] for _ in range(n)]
    for u, v in pairs:
        u, v = int(u), int(v)
        if not (1 <= u <= n) or not (1 <= v <= n):
            raise LabelOutOfRange(f"edge ({u},{v}) outside 1..{n}")
        if u == v:
            raise SelfLoop(f"self-loop at vertex {u}")
        key = (min(u, v), max(u, v))
        if key in seen:
            raise DuplicateEdge(f"edge ({u},{v}) listed twice")
        seen.add(key)
        adj[u - 1].append(v)
        adj[v - 1].append(u)
    return Graph(
        n=n,
        edges=frozenset(seen),
        adjacency=tuple(tuple(sorted(a)) for a in adj),
    )


def laplacian(g: Graph) -> np.ndarray:
    """Integer Laplacian: degrees on the diagonal, -1 per edge."""
    L = np.zeros((g.n, g.n), dtype=np.int64)
    for u, v in g.edges:
        L[u - 1, v - 1] = -1
        L[v - 1, u - 1] = -1
    for v in g.vertices():
        L[v - 1, v - 1] = g.degree(v)
    return L


def neighbors_in(g: Graph, v: int, s: Iterable) -> tuple:
    """N(v) intersected with the vertex set ``s``, sorted."""
    _check_label(g, v)
    sset = set(s)
    return tuple(w for w in g.neighbors(v) if w in sset)


def pendant_set(g: Graph) -> tuple:
    """All degree-1 vertices, sorted."""
    return tuple(v for v in g.vertices() if g.degree(v) == 1)


def components(g: Graph) -> list:
    """Connected components as sorted label tuples."""
    seen = [False] * (g.n + 1)
    out = []
    for root in g.vertices():
        if seen[root]:
            continue
        stack = [root]
        seen[root] = True
        comp = []
        while stack:
            v = stack.pop()
            comp.append(v)
            for w in g.neighbors(v):
                if not seen[w]:
                    seen[w] = True
                    stack.append(w)
        out.append(tuple(sorted(comp)))
    return out


def is_connected(g: Graph) -> bool:
    return len(components(g)) == 1


def is_tree(g: Graph) -> bool:
    return is_connected(g) and g.m == g.n - 1


def induced_subgraph(g: Graph, s: Iterable) -> InducedSubgraph:
    """Subgraph on ``s`` relabeled 1..|s|, plus the map back to parent labels."""
    labels = sorted(set(s))
    for v in labels:
        _check_label(g, v)
    index = {v: i + 1 for i, v in enumerate(labels)}
    edges = [
        (index[u], index[v])
        for (u, v) in g.edges
        if u in index and v in index
    ]
    return InducedSubgraph(
        graph=from_edge_list(edges, len(labels)),
        parent_labels=tuple(labels),
    )


def complement_set(g: Graph, s: Iterable) -> tuple:
    sset = set(s)
    return tuple(v for v in g.vertices() if v not in sset)
