"""Exact independence numbers for small induced subgraphs."""

from __future__ import annotations

from collections.abc import Iterable
from enum import Enum

import numpy as np
from loguru import logger

from .construct import ClusterGraph
from .errors import InputError
from .graph import Graph
from .reports import AlphaSample
from .skeleton import ROOT

DEFAULT_NODE_BUDGET = 1_000_000


class Budget(str, Enum):
    EXCEEDED = "budget exceeded"


class _BudgetHit(Exception):
    pass


def _bits(mask: int) -> Iterable[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def _clique_cover(cand: int, masks: list[int]) -> int:
    """Number of cliques in a greedy clique cover of ``cand``."""
    cliques = 0
    while cand:
        low = cand & -cand
        v = low.bit_length() - 1
        clique = low
        pool = cand & masks[v]
        while pool:
            w_low = pool & -pool
            w = w_low.bit_length() - 1
            clique |= w_low
            pool &= masks[w]
        cand &= ~clique
        cliques += 1
    return cliques


class _Search:
    def __init__(self, masks: list[int], budget: int) -> None:
        self.masks = masks
        self.budget = budget
        self.expanded = 0
        self.best = 0

    def reduce(self, cand: int, size: int) -> tuple[int, int]:
        """Take every vertex of degree <= 1; some maximum set contains it."""
        masks = self.masks
        changed = True
        while changed and cand:
            changed = False
            for v in _bits(cand):
                bit = 1 << v
                if not cand & bit:
                    continue
                if (masks[v] & cand).bit_count() <= 1:
                    cand &= ~(bit | masks[v])
                    size += 1
                    changed = True
        return cand, size

    def expand(self, cand: int, size: int) -> None:
        self.expanded += 1
        if self.expanded > self.budget:
            raise _BudgetHit
        cand, size = self.reduce(cand, size)
        if not cand:
            self.best = max(self.best, size)
            return
        if size + _clique_cover(cand, self.masks) <= self.best:
            return
        masks = self.masks
        v = max(_bits(cand), key=lambda x: ((masks[x] & cand).bit_count(), -x))
        bit = 1 << v
        self.expand(cand & ~(bit | masks[v]), size + 1)
        self.expand(cand & ~bit, size)


def independence_number_exact(
    g: Graph, subset: Iterable[int] | None = None, node_budget: int = DEFAULT_NODE_BUDGET
) -> int | Budget:
    """Exact alpha of ``g[subset]`` by branch and bound.

    Bounds come from a greedy clique cover; vertices of degree at most one are
    taken without branching. Returns :attr:`Budget.EXCEEDED` once more than
    ``node_budget`` search nodes were expanded.
    """
    if node_budget < 1:
        raise InputError(f"node budget must be positive, got {node_budget}")
    nodes = sorted({g.check_node(v) for v in subset}) if subset is not None else list(range(g.n))
    if not nodes:
        return 0
    local = {v: i for i, v in enumerate(nodes)}
    adj = g.adj
    masks = [0] * len(nodes)
    for v, i in local.items():
        m = 0
        for u in adj[v]:
            j = local.get(u)
            if j is not None:
                m |= 1 << j
        masks[i] = m

    search = _Search(masks, node_budget)
    try:
        search.expand((1 << len(nodes)) - 1, 0)
    except _BudgetHit:
        logger.debug("independence search gave up after {} expansions on {} nodes", node_budget, len(nodes))
        return Budget.EXCEEDED
    return search.best


def clique_pair_components(g: ClusterGraph, cluster: int) -> list[np.ndarray]:
    """Node sets C_j + C_{t/2+j} of a non-root cluster, lifted fibers included."""
    ct = g.skeleton
    if not 0 <= cluster < ct.size:
        raise InputError(f"unknown cluster {cluster}")
    if cluster == ROOT:
        raise InputError("the root cluster is an independent set and has no cliques")
    members = g.members[cluster]
    base_ids = g.base_of[members]
    offset = int(base_ids.min())
    clique = ct.beta ** ct.nodes[cluster].psi
    t = ct.cluster_size(cluster) // clique
    half = t // 2
    block = (base_ids - offset) // clique
    pair = np.where(block >= half, block - half, block)
    order = np.argsort(pair, kind="stable")
    bounds = np.searchsorted(pair[order], np.arange(half + 1))
    return [members[order[bounds[j] : bounds[j + 1]]] for j in range(half)]


def alpha_components(
    g: ClusterGraph,
    cluster: int,
    samples: int,
    seed: int,
    node_budget: int = DEFAULT_NODE_BUDGET,
) -> list[AlphaSample]:
    """Exact alpha on ``samples`` randomly chosen clique-pair components.

    The bound |C| / beta^psi is exact on base graphs (one node per clique);
    on lifts it is the reference the sampled alpha is compared against.
    """
    if samples < 1:
        raise InputError(f"samples must be >= 1, got {samples}")
    components = clique_pair_components(g, cluster)
    rng = np.random.default_rng(seed)
    picked = np.sort(rng.choice(len(components), size=min(samples, len(components)), replace=False))
    clique = g.skeleton.beta ** g.skeleton.nodes[cluster].psi
    out: list[AlphaSample] = []
    for j in picked.tolist():
        nodes = components[j]
        alpha = independence_number_exact(g.graph, nodes.tolist(), node_budget)
        out.append(
            AlphaSample(
                cluster=cluster,
                component=j,
                size=int(nodes.shape[0]),
                alpha=None if alpha is Budget.EXCEEDED else int(alpha),
                bound=int(nodes.shape[0]) // clique,
            )
        )
    logger.info("sampled alpha on {} components of cluster {}", len(out), cluster)
    return out
