"""Deterministic maximal matching by repeated rounding of the degree-based fractional matching."""

from __future__ import annotations

from collections.abc import Callable, Sequence
from dataclasses import dataclass
from fractions import Fraction

import numpy as np
from loguru import logger

from nodeavg_graph import Graph, RounderContractError

from ..program import PhasedProgram, RoundLedger
from ..types import ProblemKind
from .coloring import log_star


@dataclass(frozen=True)
class FractionalEdge:
    edge: int
    u: int
    v: int
    value: Fraction
    weight: int


Rounder = Callable[[Sequence[FractionalEdge]], list[int]]


def greedy_weight_rounder(edges: Sequence[FractionalEdge]) -> list[int]:
    """Heaviest edge first (ties by edge id) while both endpoints are free."""
    taken: set[int] = set()
    chosen: list[int] = []
    for fe in sorted(edges, key=lambda x: (-x.weight, x.edge)):
        if fe.u in taken or fe.v in taken:
            continue
        taken.update((fe.u, fe.v))
        chosen.append(fe.edge)
    return chosen


ROUNDERS: dict[str, Rounder] = {"greedy": greedy_weight_rounder}


def fractional_matching(g: Graph, alive: np.ndarray) -> list[FractionalEdge]:
    """f_e = 1/(d_u + d_v) and w_e = d_u + d_v on the surviving edges."""
    live = np.flatnonzero(alive)
    ends = g.edges[live]
    degree = np.bincount(ends.ravel(), minlength=g.n)
    out = []
    for e, (u, v) in zip(live.tolist(), ends.tolist()):
        w = int(degree[u] + degree[v])
        out.append(FractionalEdge(edge=e, u=u, v=v, value=Fraction(1, w), weight=w))
    return out


class DeterministicMatching(PhasedProgram):
    """Each iteration rounds the fractional matching to an integral one of
    weight >= |E|/10 and removes the matched nodes with their edges, which
    takes out at least |E|/40 edges.
    """

    name = "det-mm"
    problem = ProblemKind.EDGE

    def __init__(self, rounder: str | Rounder = "greedy") -> None:
        self.rounder = ROUNDERS[rounder] if isinstance(rounder, str) else rounder

    def execute(self, g: Graph, ledger: RoundLedger, seed: int) -> None:
        alive = np.ones(g.m, dtype=bool)
        incident = g.slot_edge_lists
        if g.m:
            ledger.charge(log_star(g.n), "initial coloring")
        iteration = 0
        while alive.any():
            frac = fractional_matching(g, alive)
            size = len(frac)
            by_id = {fe.edge: fe for fe in frac}
            chosen = self.rounder(frac)
            diagnostics = {"iteration": iteration, "edges": size, "chosen": list(chosen)}
            if any(e not in by_id for e in chosen):
                raise RounderContractError("rounder returned an edge that is not alive", diagnostics)
            ends = [x for e in chosen for x in (by_id[e].u, by_id[e].v)]
            if len(ends) != len(set(ends)):
                raise RounderContractError("rounder output is not a matching", diagnostics)
            weight = sum(by_id[e].weight for e in chosen)
            diagnostics["weight"] = weight
            if 10 * weight < size:
                raise RounderContractError(f"rounded weight {weight} is below |E|/10 = {size}/10", diagnostics)

            max_degree = int(np.bincount(g.edges[alive].ravel()).max())
            ledger.charge(((max_degree - 1).bit_length() + 1) ** 2, f"rounding iteration {iteration}")
            matched = set(chosen)
            removed = 0
            for x in ends:
                for e in incident[x]:
                    if alive[e]:
                        ledger.commit_edge(e, e in matched)
                        alive[e] = False
                        removed += 1
            ledger.record_iteration(iteration=iteration, edges=size, weight=weight, matched=len(chosen), removed=removed)
            logger.debug("det-mm iteration {} edges={} weight={} removed={}", iteration, size, weight, removed)
            iteration += 1
