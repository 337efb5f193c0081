"""Greedy MIS by identifier: a node joins once every lower-id neighbor has left."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any

from ..program import NodeProgram
from ..types import Commit, NodeContext, ProblemKind, StepResult

IN = "in"
OUT = "out"


@dataclass
class _State:
    lower: set[int] = field(default_factory=set)


class GreedyMisById(NodeProgram):
    """Round 0 exchanges ids; from round 1 on a node joins when all of its
    lower-id neighbors are decided out, and leaves when a neighbor joins.

    On the path 0 - 1 - 2 node 0 joins at round 1, node 1 leaves at round 2
    and node 2 joins at round 3. Only an isolated node commits at round 0;
    every other node needs one exchange to learn its neighbors' ids, so
    counts that let the local minimum join at round 0 run one round ahead.
    """

    name = "greedy-mis"
    problem = ProblemKind.NODE

    def initialize(self, ctx: NodeContext) -> _State:
        return _State()

    def step(self, ctx: NodeContext, state: _State, round_no: int, inbox: dict[int, Any]) -> StepResult:
        if round_no == 0:
            if ctx.degree == 0:
                return StepResult(state, commits=[Commit(None, True)], halt=True)
            return StepResult(state, broadcast=("id", ctx.node_id))
        if round_no == 1:
            state.lower = {p for p, (_, other) in inbox.items() if other < ctx.node_id}
        else:
            if IN in inbox.values():
                return StepResult(state, broadcast=OUT, commits=[Commit(None, False)], halt=True)
            state.lower -= {p for p, msg in inbox.items() if msg == OUT}
        if not state.lower:
            return StepResult(state, broadcast=IN, commits=[Commit(None, True)], halt=True)
        return StepResult(state)
