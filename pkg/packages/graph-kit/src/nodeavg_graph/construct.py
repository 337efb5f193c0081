"""Base graphs G_k and random lifts of the cluster-tree family."""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np
from loguru import logger

from .errors import ConstructionInvariantError, InputError
from .graph import Graph, readonly
from .skeleton import ROOT, ClusterTreeSkeleton

_LIFT_STREAM = 0x11F7


@dataclass(frozen=True, eq=False)
class ClusterGraph:
    """A graph together with its cluster map S^-1 and skeleton edge labels.

    Labels are stored per adjacency slot: ``slot_exp[s]`` is the exponent i of
    the skeleton label (beta^i or 2 beta^i) of the directed edge at slot ``s``
    and ``slot_self[s]`` tells whether both endpoints share a cluster.
    ``base_of`` maps every node to its node in the underlying base graph.
    """

    graph: Graph
    cluster_of: np.ndarray
    slot_exp: np.ndarray
    slot_self: np.ndarray
    skeleton: ClusterTreeSkeleton
    lift_order: int
    base_of: np.ndarray

    @property
    def n(self) -> int:
        return self.graph.n

    @cached_property
    def members(self) -> dict[int, np.ndarray]:
        order = np.argsort(self.cluster_of, kind="stable")
        bounds = np.searchsorted(self.cluster_of[order], np.arange(self.skeleton.size + 1))
        return {c: readonly(order[bounds[c] : bounds[c + 1]]) for c in range(self.skeleton.size)}

    def label(self, u: int, v: int) -> tuple[int, bool]:
        s = int(self.graph.indptr[u]) + self.graph.port_of(u, v)
        return int(self.slot_exp[s]), bool(self.slot_self[s])


def exponent_table(skeleton: ClusterTreeSkeleton) -> np.ndarray:
    """Dense ``[source, target]`` table of skeleton exponents, -1 off-skeleton."""
    table = np.full((skeleton.size, skeleton.size), -1, dtype=np.int8)
    for e in skeleton.edges:
        table[e.source, e.target] = e.exponent
    return table


def label_slots(graph: Graph, cluster_of: np.ndarray, skeleton: ClusterTreeSkeleton) -> tuple[np.ndarray, np.ndarray]:
    cu = cluster_of[graph.src]
    cv = cluster_of[graph.indices]
    return readonly(exponent_table(skeleton)[cu, cv]), readonly(cu == cv)


def _assemble(
    graph: Graph, cluster_of: np.ndarray, skeleton: ClusterTreeSkeleton, q: int, base_of: np.ndarray
) -> ClusterGraph:
    slot_exp, slot_self = label_slots(graph, cluster_of, skeleton)
    return ClusterGraph(
        graph=graph,
        cluster_of=readonly(cluster_of),
        slot_exp=slot_exp,
        slot_self=slot_self,
        skeleton=skeleton,
        lift_order=q,
        base_of=readonly(base_of),
    )


def _exact_div(a: int, b: int, what: str) -> int:
    if a % b:
        raise ConstructionInvariantError(f"{what}: {a} is not divisible by {b}")
    return a // b


def _clique_edges(offset: int, size: int, count: int) -> np.ndarray:
    iu, ju = np.triu_indices(size, 1)
    starts = offset + size * np.arange(count, dtype=np.int64)
    a = (starts[:, None] + iu[None, :]).ravel()
    b = (starts[:, None] + ju[None, :]).ravel()
    return np.stack([a, b], axis=1)


def _matching_edges(offset: int, size: int, count: int) -> np.ndarray:
    """Pair clique j with clique count/2 + j, position by position."""
    half = count // 2
    left = offset + np.arange(half * size, dtype=np.int64)
    return np.stack([left, left + half * size], axis=1)


def _block_edges(p_off: int, p_group: int, c_off: int, c_group: int, groups: int) -> np.ndarray:
    """Group j of the parent joined completely to group j of the child."""
    pi, ci = np.meshgrid(np.arange(p_group), np.arange(c_group), indexing="ij")
    g = np.arange(groups, dtype=np.int64)[:, None]
    a = (p_off + g * p_group + pi.ravel()[None, :]).ravel()
    b = (c_off + g * c_group + ci.ravel()[None, :]).ravel()
    return np.stack([a, b], axis=1)


def build_base_graph(ct: ClusterTreeSkeleton) -> ClusterGraph:
    """Deterministic base graph G_k for the skeleton ``ct``.

    Clusters occupy contiguous id ranges in skeleton order. S(c0) is
    independent; every other cluster is t = z/beta^psi disjoint cliques of size
    beta^psi with clique j matched to clique t/2 + j. A parent/child pair
    joined by (p,c,2 beta^i) and (c,p,beta^(i+1)) becomes matched groups
    K_{beta^(i+1), 2 beta^i}.
    """
    k, beta = ct.k, ct.beta
    if 4 * (k + 1) >= beta:
        raise InputError(f"need 2(k+1)/beta < 1/2, got k={k} beta={beta}")

    sizes = [ct.cluster_size(v) for v in range(ct.size)]
    offsets = np.concatenate([[0], np.cumsum(sizes)]).astype(np.int64)
    n = int(offsets[-1])
    parts: list[np.ndarray] = []

    for node in ct.nodes:
        if node.id == ROOT:
            continue
        z, off = sizes[node.id], int(offsets[node.id])
        clique = beta**node.psi
        t = _exact_div(z, clique, f"cluster {node.id} clique count")
        if t % 2:
            raise ConstructionInvariantError(f"cluster {node.id} has an odd clique count {t}")
        parts.append(_clique_edges(off, clique, t))
        parts.append(_matching_edges(off, clique, t))

        down = ct.edge_label(node.parent, node.id)
        i = down.exponent
        p_group, c_group = beta ** (i + 1), 2 * beta**i
        groups = _exact_div(sizes[node.parent], p_group, f"parent {node.parent} groups")
        if groups * c_group != z:
            raise ConstructionInvariantError(f"group counts disagree for cluster {node.id}")
        parts.append(_block_edges(int(offsets[node.parent]), p_group, off, c_group, groups))

    edges = np.concatenate(parts) if parts else np.zeros((0, 2), dtype=np.int64)
    graph = Graph.from_edges(n, edges)
    cluster_of = np.repeat(np.arange(ct.size, dtype=np.int64), sizes)
    logger.info("built base graph k={} beta={} n={} m={}", k, beta, graph.n, graph.m)
    return _assemble(graph, cluster_of, ct, 1, np.arange(n, dtype=np.int64))


def _lift_edges(base: Graph, q: int, seed: int) -> np.ndarray:
    rng = np.random.default_rng(np.random.SeedSequence([seed, _LIFT_STREAM]))
    m = base.m
    fiber = np.arange(q, dtype=np.int64)
    perms = rng.permuted(np.tile(fiber, (m, 1)), axis=1)
    a = (base.edges[:, 0:1] * q + fiber[None, :]).ravel()
    b = (base.edges[:, 1:2] * q + perms).ravel()
    return np.stack([a, b], axis=1)


def lift_graph(base: Graph, q: int, seed: int) -> Graph:
    """Random order-q lift of a plain graph; copy i of v gets id ``v*q + i``.

    Every base edge becomes a uniformly random perfect matching between the
    two fibers; each row of the permutation matrix is shuffled independently.
    """
    if q < 1:
        raise InputError(f"lift order must be >= 1, got {q}")
    return Graph.from_edges(base.n * q, _lift_edges(base, q, seed))


def random_lift(g: ClusterGraph, q: int, seed: int) -> ClusterGraph:
    if q < 1:
        raise InputError(f"lift order must be >= 1, got {q}")
    graph = lift_graph(g.graph, q, seed)
    cluster_of = np.repeat(g.cluster_of, q)
    base_of = np.repeat(g.base_of, q)
    logger.info("lifted cluster graph q={} seed={} n={} m={}", q, seed, graph.n, graph.m)
    return _assemble(graph, cluster_of, g.skeleton, g.lift_order * q, base_of)


def fiber_check(base: Graph, lifted: Graph, q: int) -> bool:
    """True iff ``lifted`` is a q-lift of ``base`` under ``v*q + i -> v``.

    Every lifted node must see exactly one copy of each base neighbor, which
    makes every fiber pair of a base edge a perfect matching.
    """
    if lifted.n != base.n * q:
        return False
    if not np.array_equal(lifted.degrees, np.repeat(base.degrees, q)):
        return False
    src = lifted.src
    offset = np.arange(lifted.indices.shape[0], dtype=np.int64) - lifted.indptr[src]
    expected = base.indices[base.indptr[src // q] + offset]
    return bool(np.array_equal(lifted.indices // q, expected))
