"""Deterministic (2, O(log Δ)) and (2, O(log log n)) ruling sets by dominating-set halving."""

from __future__ import annotations

import math
from enum import Enum

import numpy as np
from loguru import logger

from nodeavg_graph import Graph

from ..program import PhasedProgram, RoundLedger
from ..types import ProblemKind
from .coloring import FOREST_MIS_ROUNDS, cole_vishkin_3color, forest_mis, linial_greedy_mis


class RulingMode(str, Enum):
    LOG_DELTA = "logDelta"
    LOG_LOG_N = "loglogN"


def halving_iterations(mode: RulingMode, n: int, max_degree: int) -> int:
    if mode is RulingMode.LOG_DELTA:
        return (max_degree - 1).bit_length() if max_degree > 1 else 0
    if n <= 2:
        return 0
    return math.ceil(2 * math.log2(math.log2(n)))


def _tree_heights(parent: np.ndarray, roots: list[int]) -> tuple[np.ndarray, dict[int, int]]:
    """Component label (root id) per node and the height of every component."""
    size = parent.shape[0]
    children: list[list[int]] = [[] for _ in range(size)]
    for v in range(size):
        if parent[v] >= 0:
            children[int(parent[v])].append(v)
    component = np.full(size, -1, dtype=np.int64)
    heights: dict[int, int] = {}
    for r in roots:
        frontier, depth = [r], 0
        component[r] = r
        while frontier:
            nxt = [c for x in frontier for c in children[x]]
            if not nxt:
                break
            component[nxt] = r
            frontier = nxt
            depth += 1
        heights[r] = depth
    return component, heights


class DeterministicRulingSet(PhasedProgram):
    """Halve the active set until the iteration budget runs out, then finish with an MIS.

    Per iteration each active node points to its minimum-id active neighbor.
    The pointer graph is a forest once every mutual pair keeps only the
    pointer of its larger endpoint. In each tree the smaller of a forest MIS
    and its complement stays active; everyone else commits out and points to
    a tree neighbor that stays. Trees learn their sizes by a convergecast and
    broadcast, so a tree of height h commits 2h + 1 rounds after its MIS.
    """

    name = "det-ruling"
    problem = ProblemKind.NODE

    def __init__(self, mode: RulingMode = RulingMode.LOG_DELTA) -> None:
        self.mode = RulingMode(mode)

    def execute(self, g: Graph, ledger: RoundLedger, seed: int) -> None:
        iterations = halving_iterations(self.mode, g.n, g.max_degree)
        adj = g.adj
        active = np.ones(g.n, dtype=bool)
        pointer: dict[int, int] = {}
        ledger.annotations["halving_iterations"] = iterations

        for it in range(iterations):
            nodes = np.flatnonzero(active).tolist()
            if not nodes:
                break
            before = len(nodes)
            start = ledger.round
            target: dict[int, int] = {}
            for v in nodes:
                live = [u for u in adj[v] if active[u]]
                if live:
                    target[v] = min(live)
                else:
                    ledger.commit_node(v, True)
                    active[v] = False

            forest_nodes = sorted(target)
            if not forest_nodes:
                ledger.record_iteration(iteration=it, active=before, kept=0, rounds=0)
                break
            local = {v: i for i, v in enumerate(forest_nodes)}
            parent = np.full(len(forest_nodes), -1, dtype=np.int64)
            for v, u in target.items():
                if target.get(u) == v and v < u:
                    continue
                parent[local[v]] = local[u]
            roots = np.flatnonzero(parent < 0).tolist()

            colors, color_rounds = cole_vishkin_3color(parent, ids=forest_nodes)
            in_mis = forest_mis(parent, colors)
            component, heights = _tree_heights(parent, roots)

            mis_size = np.bincount(component, weights=in_mis, minlength=len(forest_nodes))
            comp_size = np.bincount(component, minlength=len(forest_nodes))
            keep_mis = {r: mis_size[r] <= comp_size[r] - mis_size[r] for r in roots}
            stays = np.array([in_mis[i] == keep_mis[int(component[i])] for i in range(len(forest_nodes))])

            neighbors: list[list[int]] = [[] for _ in forest_nodes]
            for i, p in enumerate(parent.tolist()):
                if p >= 0:
                    neighbors[i].append(p)
                    neighbors[p].append(i)

            # 1 round for pointers, then coloring, forest MIS and size aggregation
            base = start + 1 + color_rounds + FOREST_MIS_ROUNDS
            finish = base
            for i, v in enumerate(forest_nodes):
                if stays[i]:
                    continue
                when = base + 2 * heights[int(component[i])] + 1
                finish = max(finish, when)
                anchor = min(forest_nodes[j] for j in neighbors[i] if stays[j])
                pointer[v] = anchor
                ledger.commit_node(v, False, at=when)
                active[v] = False
            ledger.advance_to(finish)
            kept = int(stays.sum())
            ledger.record_iteration(iteration=it, active=before, forest=len(forest_nodes), kept=kept, rounds=finish - start)
            logger.debug("det-ruling iteration {} active {} -> {}", it, before, kept)

        survivors = np.flatnonzero(active).tolist()
        if survivors:
            sub, keep = g.subgraph(survivors)
            outcome = linial_greedy_mis(sub, n=g.n, ids=keep.tolist())
            start = ledger.round
            for i, v in enumerate(keep.tolist()):
                ledger.commit_node(v, i in outcome.members, at=start + outcome.decided[i])
            ledger.advance_to(start + outcome.rounds)
        ledger.annotations["pointer"] = pointer
        ledger.annotations["survivors"] = len(survivors)
