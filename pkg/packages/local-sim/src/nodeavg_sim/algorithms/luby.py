"""Luby's MIS with degree-then-id priority, three rounds per iteration."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any

from ..program import NodeProgram
from ..types import Commit, NodeContext, ProblemKind, StepResult

PERIOD = 3
IN = "in"
OUT = "out"


@dataclass
class _State:
    alive: set[int] = field(default_factory=set)
    degree: int = 0
    marked: bool = False


def mark_probability(degree: int) -> float:
    return 1.0 / (2 * degree)


class LubyMis(NodeProgram):
    """Phase 0 marks with probability 1/(2d), phase 1 lets unbeaten marked
    nodes join, phase 2 removes their neighbors.

    A marked node is beaten by a marked neighbor with larger (degree, id).
    """

    name = "luby-mis"
    problem = ProblemKind.NODE

    def initialize(self, ctx: NodeContext) -> _State:
        return _State(alive=set(range(ctx.degree)))

    def step(self, ctx: NodeContext, state: _State, round_no: int, inbox: dict[int, Any]) -> StepResult:
        phase = round_no % PERIOD
        if phase == 0:
            state.alive -= {p for p, msg in inbox.items() if msg == OUT}
            state.degree = len(state.alive)
            if state.degree == 0:
                return StepResult(state, commits=[Commit(None, True)], halt=True)
            state.marked = bool(ctx.rng.random() < mark_probability(state.degree))
            msg = (state.marked, state.degree, ctx.node_id)
            return StepResult(state, outbox={p: msg for p in state.alive})

        if phase == 1:
            mine = (state.degree, ctx.node_id)
            beaten = any(marked and (deg, other) > mine for marked, deg, other in inbox.values())
            if state.marked and not beaten:
                return StepResult(
                    state, outbox={p: IN for p in state.alive}, commits=[Commit(None, True)], halt=True
                )
            return StepResult(state)

        if IN in inbox.values():
            return StepResult(state, outbox={p: OUT for p in state.alive}, commits=[Commit(None, False)], halt=True)
        return StepResult(state)
