"""Radius-k views G^k(v) and tree-likeness."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Protocol, runtime_checkable

import numpy as np

from .graph import Graph, ball

# (exponent seen from the tail, self flag); None on unlabeled graphs.
EdgeLabel = tuple[int, bool] | None


@runtime_checkable
class LabeledGraph(Protocol):
    """Anything that wraps a :class:`Graph` with per-slot edge labels."""

    graph: Graph
    slot_exp: np.ndarray
    slot_self: np.ndarray


def split_labels(g: Graph | LabeledGraph) -> tuple[Graph, np.ndarray | None, np.ndarray | None]:
    if isinstance(g, Graph):
        return g, None, None
    return g.graph, g.slot_exp, g.slot_self


@dataclass(frozen=True)
class ViewTree:
    """The subgraph G^k(v): nodes within distance k of ``root``, minus the
    edges joining two nodes at distance exactly k.

    ``edges`` holds undirected view edges as ``(a, b)`` with ``dist[a] <=
    dist[b]``; ``labels`` maps directed pairs to the label seen from the tail.
    ``parent`` is the BFS parent of every non-root vertex (lowest id first).
    """

    root: int
    depth: int
    dist: dict[int, int]
    edges: tuple[tuple[int, int], ...]
    parent: dict[int, int]
    labels: dict[tuple[int, int], EdgeLabel] = field(default_factory=dict)

    @property
    def vertex_count(self) -> int:
        return len(self.dist)

    @property
    def is_tree(self) -> bool:
        return len(self.edges) == len(self.dist) - 1

    def children(self) -> dict[int, list[int]]:
        kids: dict[int, list[int]] = {v: [] for v in self.dist}
        for child, par in self.parent.items():
            kids[par].append(child)
        for lst in kids.values():
            lst.sort()
        return kids


def radius_view(g: Graph | LabeledGraph, v: int, k: int) -> ViewTree:
    graph, slot_exp, slot_self = split_labels(g)
    v = graph.check_node(v)
    dist = ball(graph, v, k)
    adj = graph.adj
    indptr = graph.indptr
    edges: list[tuple[int, int]] = []
    parent: dict[int, int] = {}
    labels: dict[tuple[int, int], EdgeLabel] = {}
    for x in sorted(dist, key=lambda node: (dist[node], node)):
        dx = dist[x]
        for port, y in enumerate(adj[x]):
            dy = dist.get(y)
            if dy is None or (dx == k and dy == k):
                continue
            if slot_exp is not None:
                s = int(indptr[x]) + port
                labels[(x, y)] = (int(slot_exp[s]), bool(slot_self[s]))
            if (dx, x) < (dy, y):
                edges.append((x, y))
            if dy == dx + 1 and y not in parent:
                parent[y] = x
    return ViewTree(root=v, depth=k, dist=dist, edges=tuple(edges), parent=parent, labels=labels)


def is_tree_like(g: Graph | LabeledGraph, v: int, k: int) -> bool:
    graph, _, _ = split_labels(g)
    v = graph.check_node(v)
    dist = ball(graph, v, k)
    adj = graph.adj
    twice = 0
    for x, dx in dist.items():
        for y in adj[x]:
            dy = dist.get(y)
            if dy is not None and not (dx == k and dy == k):
                twice += 1
    return twice // 2 == len(dist) - 1
