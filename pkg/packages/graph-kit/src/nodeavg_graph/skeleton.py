"""Cluster tree skeletons CT_k."""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from functools import cached_property

from loguru import logger

from .errors import InputError

ROOT = 0  # c0
FIRST_CHILD = 1  # c1


class NodeKind(str, Enum):
    INTERNAL = "internal"
    LEAF = "leaf"


@dataclass(frozen=True)
class SkeletonNode:
    id: int
    kind: NodeKind
    parent: int | None
    psi: int | None
    depth: int


@dataclass(frozen=True)
class SkeletonEdge:
    """Directed skeleton edge labeled ``coefficient * beta**exponent``."""

    source: int
    target: int
    coefficient: int
    exponent: int

    def multiplicity(self, beta: int) -> int:
        return self.coefficient * beta**self.exponent


@dataclass(frozen=True, eq=False)
class ClusterTreeSkeleton:
    k: int
    beta: int
    nodes: tuple[SkeletonNode, ...]
    edges: tuple[SkeletonEdge, ...]

    @property
    def size(self) -> int:
        return len(self.nodes)

    @cached_property
    def out_edges(self) -> dict[int, tuple[SkeletonEdge, ...]]:
        table: dict[int, list[SkeletonEdge]] = {node.id: [] for node in self.nodes}
        for e in self.edges:
            table[e.source].append(e)
        return {k: tuple(v) for k, v in table.items()}

    @cached_property
    def label_table(self) -> dict[tuple[int, int], SkeletonEdge]:
        return {(e.source, e.target): e for e in self.edges}

    def edge_label(self, u: int, v: int) -> SkeletonEdge | None:
        return self.label_table.get((u, v))

    def children(self, v: int) -> list[int]:
        return [node.id for node in self.nodes if node.parent == v]

    def leaves(self) -> list[int]:
        return [node.id for node in self.nodes if node.kind is NodeKind.LEAF]

    def cluster_size(self, v: int) -> int:
        """z(v) = 2 beta^(k+1) (beta/2)^(k+1-d(v))."""
        d = self.nodes[v].depth
        return 2 * self.beta ** (self.k + 1) * (self.beta // 2) ** (self.k + 1 - d)

    def total_size(self) -> int:
        return sum(self.cluster_size(node.id) for node in self.nodes)


class _Builder:
    def __init__(self) -> None:
        self.kind: list[NodeKind] = []
        self.parent: list[int | None] = []
        self.psi: list[int | None] = []
        self.depth: list[int] = []
        self.edges: list[SkeletonEdge] = []

    def add(self, kind: NodeKind, parent: int | None, psi: int | None) -> int:
        self.kind.append(kind)
        self.parent.append(parent)
        self.psi.append(psi)
        self.depth.append(0 if parent is None else self.depth[parent] + 1)
        return len(self.kind) - 1

    def attach_leaf(self, parent: int, j: int) -> int:
        """New leaf with edges (p,l,2b^j), (l,p,b^(j+1)), (l,l,b^(j+1))."""
        leaf = self.add(NodeKind.LEAF, parent, j + 1)
        self.edges.append(SkeletonEdge(parent, leaf, 2, j))
        self.edges.append(SkeletonEdge(leaf, parent, 1, j + 1))
        self.edges.append(SkeletonEdge(leaf, leaf, 1, j + 1))
        return leaf


def build_skeleton(k: int, beta: int) -> ClusterTreeSkeleton:
    """Build CT_k by the base case and k inductive steps.

    Nodes are numbered in construction order: c0 = 0, c1 = 1, then the new
    leaves of each step (internal nodes first, then the children of old
    leaves, both in id order).
    """
    if k < 0:
        raise InputError(f"k must be non-negative, got {k}")
    if beta % 2 or beta < 4:
        raise InputError(f"beta must be an even integer >= 4, got {beta}")

    b = _Builder()
    c0 = b.add(NodeKind.INTERNAL, None, None)
    b.attach_leaf(c0, 0)

    for step in range(1, k + 1):
        internal = [v for v, kind in enumerate(b.kind) if kind is NodeKind.INTERNAL]
        leaves = [v for v, kind in enumerate(b.kind) if kind is NodeKind.LEAF]
        for v in internal:
            b.attach_leaf(v, step)
        for u in leaves:
            i = b.psi[u]
            for j in range(step + 1):
                if j != i:
                    b.attach_leaf(u, j)
            b.kind[u] = NodeKind.INTERNAL

    nodes = tuple(
        SkeletonNode(id=v, kind=b.kind[v], parent=b.parent[v], psi=b.psi[v], depth=b.depth[v])
        for v in range(len(b.kind))
    )
    logger.debug("built CT_{} skeleton beta={} with {} nodes", k, beta, len(nodes))
    return ClusterTreeSkeleton(k=k, beta=beta, nodes=nodes, edges=tuple(b.edges))
