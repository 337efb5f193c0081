"""View isomorphism between S(c0) and S(c1) nodes of a cluster graph.

``find_isomorphism`` walks the two radius-k views in lockstep. At every
mapped pair it groups the remaining neighbors of each side into buckets by
the exponent of the connecting edge, self-labeled edges first, and pairs the
buckets index by index. Internal nodes reached through different labels have
two buckets that differ by exactly one element; the surplus of one side is
paired with the surplus of the other.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from loguru import logger

from .construct import ClusterGraph
from .errors import ConstructionInvariantError, InputError
from .graph import Graph
from .skeleton import FIRST_CHILD, ROOT, NodeKind
from .views import LabeledGraph, is_tree_like, radius_view, split_labels


@dataclass(frozen=True)
class BucketPairing:
    """Bucket sizes seen when mapping ``v`` to ``w``.

    ``history_*`` is the exponent of the edge back to the node we came from
    (None at the roots); ``kind_*`` is the skeleton position of the cluster.
    """

    v: int
    w: int
    remaining: int
    sizes_v: tuple[int, ...]
    sizes_w: tuple[int, ...]
    history_v: int | None
    history_w: int | None
    kind_v: NodeKind
    kind_w: NodeKind

    @property
    def balanced(self) -> bool:
        return self.sizes_v == self.sizes_w

    @property
    def same_position_and_history(self) -> bool:
        return self.kind_v is self.kind_w and self.history_v == self.history_w

    @property
    def both_internal(self) -> bool:
        return self.kind_v is NodeKind.INTERNAL and self.kind_w is NodeKind.INTERNAL


@dataclass(frozen=True)
class IsoMapping:
    root_pair: tuple[int, int]
    k: int
    phi: dict[int, int]
    pairings: tuple[BucketPairing, ...] = ()

    def __len__(self) -> int:
        return len(self.phi)


def _history(g: ClusterGraph, x: int, prev: int | None) -> int | None:
    if prev is None:
        return None
    return g.label(x, prev)[0]


def _buckets(g: ClusterGraph, x: int, exclude: int | None, width: int) -> list[list[int]]:
    graph = g.graph
    lo = int(graph.indptr[x])
    keyed: list[list[tuple[bool, int]]] = [[] for _ in range(width)]
    for port, y in enumerate(graph.adj[x]):
        if y == exclude:
            continue
        exp = int(g.slot_exp[lo + port])
        if not 0 <= exp < width:
            raise ConstructionInvariantError(f"edge {x}-{y} has no skeleton label (exponent {exp})")
        keyed[exp].append((not bool(g.slot_self[lo + port]), y))
    return [[y for _, y in sorted(bucket)] for bucket in keyed]


def _surplus_indices(sizes_v: list[int], sizes_w: list[int]) -> tuple[int, int] | None:
    """(i_v, i_w) for the single permitted mismatch, None if all sizes agree."""
    diff = [a - b for a, b in zip(sizes_v, sizes_w)]
    off = [i for i, d in enumerate(diff) if d]
    if not off:
        return None
    plus = [i for i in off if diff[i] == 1]
    minus = [i for i in off if diff[i] == -1]
    if len(off) != 2 or len(plus) != 1 or len(minus) != 1:
        raise ConstructionInvariantError(f"bucket sizes {sizes_v} and {sizes_w} differ beyond one swapped pair")
    return plus[0], minus[0]


def _map(n_v: list[list[int]], n_w: list[list[int]], phi: dict[int, int]) -> None:
    for bucket_v, bucket_w in zip(n_v, n_w):
        for a, b in zip(bucket_v, bucket_w):
            phi[a] = b
    surplus = _surplus_indices([len(b) for b in n_v], [len(b) for b in n_w])
    if surplus is not None:
        i_v, i_w = surplus
        phi[n_v[i_v][-1]] = n_w[i_w][-1]


def find_isomorphism(g: ClusterGraph, k: int, v0: int, v1: int) -> IsoMapping:
    """Map the radius-k view of ``v0`` in S(c0) onto that of ``v1`` in S(c1)."""
    v0, v1 = g.graph.check_node(v0), g.graph.check_node(v1)
    if k < 0:
        raise InputError(f"depth must be non-negative, got {k}")
    if int(g.cluster_of[v0]) != ROOT or int(g.cluster_of[v1]) != FIRST_CHILD:
        raise InputError(f"expected nodes of S(c0) and S(c1), got clusters {g.cluster_of[v0]} and {g.cluster_of[v1]}")
    if not (is_tree_like(g, v0, k) and is_tree_like(g, v1, k)):
        raise InputError(f"views of {v0} and {v1} at depth {k} are not both trees")

    width = g.skeleton.k + 2
    kinds = [node.kind for node in g.skeleton.nodes]
    phi: dict[int, int] = {v0: v1}
    pairings: list[BucketPairing] = []
    stack: list[tuple[int, int, int | None, int]] = [(v0, v1, None, k)]
    while stack:
        v, w, prev, depth = stack.pop()
        if depth == 0:
            continue
        prev_w = None if prev is None else phi[prev]
        n_v = _buckets(g, v, prev, width)
        n_w = _buckets(g, w, prev_w, width)
        pairings.append(
            BucketPairing(
                v=v,
                w=w,
                remaining=depth,
                sizes_v=tuple(len(b) for b in n_v),
                sizes_w=tuple(len(b) for b in n_w),
                history_v=_history(g, v, prev),
                history_w=_history(g, w, prev_w),
                kind_v=kinds[int(g.cluster_of[v])],
                kind_w=kinds[int(g.cluster_of[w])],
            )
        )
        _map(n_v, n_w, phi)
        for bucket in reversed(n_v):
            for x in reversed(bucket):
                stack.append((x, phi[x], v, depth - 1))

    if len(set(phi.values())) != len(phi):
        raise ConstructionInvariantError(f"mapping from {v0} to {v1} is not injective")
    logger.debug("mapped views of {} and {} at depth {}: {} nodes", v0, v1, k, len(phi))
    return IsoMapping(root_pair=(v0, v1), k=k, phi=phi, pairings=tuple(pairings))


def verify_isomorphism(g: Graph | LabeledGraph, k: int, v0: int, v1: int, m: IsoMapping) -> bool:
    """True iff ``m.phi`` is a bijection of the two views preserving adjacency."""
    graph, _, _ = split_labels(g)
    view0 = radius_view(graph, v0, k)
    view1 = radius_view(graph, v1, k)
    phi = m.phi
    if phi.get(v0) != v1:
        return False
    if set(phi) != set(view0.dist) or set(phi.values()) != set(view1.dist):
        return False
    if len(set(phi.values())) != len(phi):
        return False
    mapped = {frozenset((phi[a], phi[b])) for a, b in view0.edges}
    return mapped == {frozenset(e) for e in view1.edges}


def _treelike_scan(g: ClusterGraph, cluster: int, k: int, rng: np.random.Generator):
    members = g.members[cluster]
    for v in rng.permutation(members).tolist():
        if is_tree_like(g, v, k):
            yield v


def find_treelike_pairs(g: ClusterGraph, k: int, seed: int, limit: int) -> list[tuple[int, int]]:
    """Up to ``limit`` disjoint (v0, v1) pairs with tree-like radius-k views.

    S(c0) and S(c1) are scanned in independent seeded random orders.
    """
    if limit < 1:
        raise InputError(f"limit must be >= 1, got {limit}")
    if g.skeleton.size <= FIRST_CHILD:
        raise InputError("cluster graph has no S(c1)")
    rng = np.random.default_rng(seed)
    left = _treelike_scan(g, ROOT, k, rng)
    right = _treelike_scan(g, FIRST_CHILD, k, np.random.default_rng(rng.integers(2**63)))
    pairs: list[tuple[int, int]] = []
    for v0, v1 in zip(left, right):
        pairs.append((v0, v1))
        if len(pairs) == limit:
            break
    return pairs


def find_treelike_pair(g: ClusterGraph, k: int, seed: int) -> tuple[int, int] | None:
    pairs = find_treelike_pairs(g, k, seed, 1)
    return pairs[0] if pairs else None
