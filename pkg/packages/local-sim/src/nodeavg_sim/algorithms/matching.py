"""Randomized maximal matching by isolated marked edges, four rounds per iteration."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any

from ..program import NodeProgram
from ..types import Commit, NodeContext, ProblemKind, StepResult

PERIOD = 4
MATCHED = "matched"


@dataclass
class _State:
    alive: set[int] = field(default_factory=set)
    peers: dict[int, tuple[int, int]] = field(default_factory=dict)
    marked: dict[int, bool] = field(default_factory=dict)
    count: int = 0


def mark_probability(du: int, dv: int) -> float:
    return 1.0 / (4 * (du + dv))


class RandomizedMatching(NodeProgram):
    """Each surviving edge is marked with probability 1/(4(d_u + d_v)) by its
    smaller-id endpoint; a marked edge with no other marked edge at either
    endpoint joins the matching and its endpoints leave with all their edges.
    """

    name = "rand-mm"
    problem = ProblemKind.EDGE

    def initialize(self, ctx: NodeContext) -> _State:
        return _State(alive=set(range(ctx.degree)))

    def step(self, ctx: NodeContext, state: _State, round_no: int, inbox: dict[int, Any]) -> StepResult:
        phase = round_no % PERIOD
        if phase == 0:
            state.alive -= {p for p, msg in inbox.items() if msg == MATCHED}
            if not state.alive:
                return StepResult(state, halt=True)
            msg = (len(state.alive), ctx.node_id)
            return StepResult(state, outbox={p: msg for p in state.alive})

        if phase == 1:
            state.peers = dict(inbox)
            state.marked = {}
            degree = len(state.alive)
            outbox = {}
            for p in sorted(state.alive):
                other_degree, other = state.peers[p]
                if ctx.node_id < other:
                    marked = bool(ctx.rng.random() < mark_probability(degree, other_degree))
                    state.marked[p] = marked
                    outbox[p] = marked
            return StepResult(state, outbox=outbox)

        if phase == 2:
            state.marked.update(inbox)
            state.count = sum(state.marked.values())
            return StepResult(state, outbox={p: state.count for p in state.alive})

        chosen = [p for p in sorted(state.alive) if state.marked.get(p) and state.count == 1 and inbox[p] == 1]
        if not chosen:
            return StepResult(state)
        (port,) = chosen
        commits = [Commit(p, p == port) for p in sorted(state.alive)]
        return StepResult(state, outbox={p: MATCHED for p in state.alive}, commits=commits, halt=True)
