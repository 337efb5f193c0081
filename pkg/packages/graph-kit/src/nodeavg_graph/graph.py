"""Immutable simple undirected graph stored in CSR form."""

from __future__ import annotations

from collections import deque
from collections.abc import Iterable, Sequence
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .errors import InputError


def readonly(arr: np.ndarray) -> np.ndarray:
    arr.flags.writeable = False
    return arr


@dataclass(frozen=True, eq=False)
class Graph:
    """Simple undirected graph on nodes ``0..n-1``.

    Adjacency is kept as CSR arrays. Slot ``s`` in ``indices`` is the directed
    half-edge from ``src[s]`` to ``indices[s]``; ``edge_ids[s]`` names the
    undirected edge and ``reverse[s]`` is the slot of the opposite half-edge.
    Neighbor lists are sorted, so the port number of a neighbor is its rank.
    Undirected edges are numbered in lexicographic order of ``(min, max)``.
    """

    n: int
    indptr: np.ndarray
    indices: np.ndarray
    edge_ids: np.ndarray
    reverse: np.ndarray
    edges: np.ndarray

    # ------------------------------------------------------------------
    # Construction
    # ------------------------------------------------------------------

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Sequence[int]] | np.ndarray) -> Graph:
        if n < 0:
            raise InputError(f"node count must be non-negative, got {n}")
        arr = np.asarray(edges if isinstance(edges, np.ndarray) else list(edges), dtype=np.int64)
        arr = arr.reshape(-1, 2)
        if arr.size and (arr.min() < 0 or arr.max() >= n):
            raise InputError(f"edge endpoint outside 0..{n - 1}")
        lo = np.minimum(arr[:, 0], arr[:, 1])
        hi = np.maximum(arr[:, 0], arr[:, 1])
        if np.any(lo == hi):
            bad = int(lo[np.argmax(lo == hi)])
            raise InputError(f"self-loop at node {bad}")
        order = np.lexsort((hi, lo))
        lo, hi = lo[order], hi[order]
        m = lo.shape[0]
        if m > 1:
            dup = (lo[1:] == lo[:-1]) & (hi[1:] == hi[:-1])
            if np.any(dup):
                i = int(np.argmax(dup))
                raise InputError(f"parallel edge {int(lo[i])}-{int(hi[i])}")

        src = np.concatenate([lo, hi])
        dst = np.concatenate([hi, lo])
        eid = np.concatenate([np.arange(m, dtype=np.int64)] * 2)
        slot_order = np.lexsort((dst, src))
        indices = dst[slot_order]
        edge_ids = eid[slot_order]
        counts = np.bincount(src, minlength=n) if m else np.zeros(n, dtype=np.int64)
        indptr = np.concatenate([[0], np.cumsum(counts)]).astype(np.int64)

        reverse = np.empty(2 * m, dtype=np.int64)
        by_edge = np.argsort(edge_ids, kind="stable")
        first, second = by_edge[0::2], by_edge[1::2]
        reverse[first] = second
        reverse[second] = first

        return cls(
            n=n,
            indptr=readonly(indptr),
            indices=readonly(indices),
            edge_ids=readonly(edge_ids),
            reverse=readonly(reverse),
            edges=readonly(np.stack([lo, hi], axis=1) if m else np.zeros((0, 2), dtype=np.int64)),
        )

    @classmethod
    def empty(cls, n: int = 0) -> Graph:
        return cls.from_edges(n, np.zeros((0, 2), dtype=np.int64))

    # ------------------------------------------------------------------
    # Basic queries
    # ------------------------------------------------------------------

    @property
    def m(self) -> int:
        return int(self.edges.shape[0])

    @cached_property
    def degrees(self) -> np.ndarray:
        return readonly(np.diff(self.indptr))

    @cached_property
    def src(self) -> np.ndarray:
        """Tail node of every slot."""
        return readonly(np.repeat(np.arange(self.n, dtype=np.int64), self.degrees))

    @property
    def max_degree(self) -> int:
        return int(self.degrees.max()) if self.n else 0

    @property
    def min_degree(self) -> int:
        return int(self.degrees.min()) if self.n else 0

    def check_node(self, v: int) -> int:
        if not isinstance(v, (int, np.integer)) or not 0 <= int(v) < self.n:
            raise InputError(f"invalid node id {v!r} for graph with {self.n} nodes")
        return int(v)

    def degree(self, v: int) -> int:
        return int(self.indptr[v + 1] - self.indptr[v])

    def neighbors(self, v: int) -> np.ndarray:
        return self.indices[self.indptr[v] : self.indptr[v + 1]]

    def port_of(self, v: int, u: int) -> int:
        """Port number of neighbor ``u`` at ``v``; ``-1`` when not adjacent."""
        row = self.neighbors(v)
        i = int(np.searchsorted(row, u))
        return i if i < row.shape[0] and row[i] == u else -1

    def has_edge(self, u: int, v: int) -> bool:
        return self.port_of(u, v) >= 0

    def edge_id(self, u: int, v: int) -> int:
        p = self.port_of(u, v)
        if p < 0:
            raise InputError(f"no edge {u}-{v}")
        return int(self.edge_ids[self.indptr[u] + p])

    @cached_property
    def adj(self) -> list[list[int]]:
        """Neighbor lists as plain Python lists for tight per-node loops."""
        flat = self.indices.tolist()
        ptr = self.indptr.tolist()
        return [flat[ptr[v] : ptr[v + 1]] for v in range(self.n)]

    @cached_property
    def slot_edge_lists(self) -> list[list[int]]:
        flat = self.edge_ids.tolist()
        ptr = self.indptr.tolist()
        return [flat[ptr[v] : ptr[v + 1]] for v in range(self.n)]

    # ------------------------------------------------------------------
    # Derived graphs
    # ------------------------------------------------------------------

    def subgraph(self, nodes: Iterable[int]) -> tuple[Graph, np.ndarray]:
        """Induced subgraph and the array mapping its node ids to ours."""
        keep = np.unique(np.fromiter((int(v) for v in nodes), dtype=np.int64))
        local = np.full(self.n, -1, dtype=np.int64)
        local[keep] = np.arange(keep.shape[0])
        if self.m == 0 or keep.size == 0:
            return Graph.empty(int(keep.shape[0])), keep
        a, b = local[self.edges[:, 0]], local[self.edges[:, 1]]
        mask = (a >= 0) & (b >= 0)
        return Graph.from_edges(int(keep.shape[0]), np.stack([a[mask], b[mask]], axis=1)), keep


def bfs_distances(g: Graph, sources: Iterable[int], limit: int | None = None) -> dict[int, int]:
    """Hop distances from the nearest source, truncated at ``limit``."""
    adj = g.adj
    dist: dict[int, int] = {}
    queue: deque[int] = deque()
    for s in sources:
        s = g.check_node(s)
        if s not in dist:
            dist[s] = 0
            queue.append(s)
    while queue:
        x = queue.popleft()
        d = dist[x]
        if limit is not None and d >= limit:
            continue
        for y in adj[x]:
            if y not in dist:
                dist[y] = d + 1
                queue.append(y)
    return dist


def ball(g: Graph, v: int, k: int) -> dict[int, int]:
    """Nodes within distance ``k`` of ``v`` mapped to their distance."""
    if k < 0:
        raise InputError(f"radius must be non-negative, got {k}")
    return bfs_distances(g, [v], k)
