"""Randomized (2,2)-ruling set, four rounds per iteration."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any

from ..program import NodeProgram
from ..types import Commit, NodeContext, ProblemKind, StepResult

PERIOD = 4
JOINED = "S"
DOMINATED = "dom1"
GONE = "gone"


@dataclass
class _State:
    alive: set[int] = field(default_factory=set)
    degree: int = 0
    marked: bool = False


def mark_probability(degree: int) -> float:
    return 1.0 / (degree + 1)


class RulingSet22(NodeProgram):
    """Iteration: mark with 1/(d+1); unbeaten marked nodes join S; their
    neighbors, then the neighbors' neighbors, commit dominated and leave.

    Distances are taken in the surviving graph, simultaneously for all new
    members of S.
    """

    name = "ruling22"
    problem = ProblemKind.NODE

    def initialize(self, ctx: NodeContext) -> _State:
        return _State(alive=set(range(ctx.degree)))

    def step(self, ctx: NodeContext, state: _State, round_no: int, inbox: dict[int, Any]) -> StepResult:
        phase = round_no % PERIOD
        if phase == 0:
            state.alive -= {p for p, msg in inbox.items() if msg == GONE}
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
                    state, outbox={p: JOINED for p in state.alive}, commits=[Commit(None, True)], halt=True
                )
            return StepResult(state)

        if phase == 2:
            if JOINED in inbox.values():
                return StepResult(
                    state, outbox={p: DOMINATED for p in state.alive}, commits=[Commit(None, False)], halt=True
                )
            return StepResult(state)

        if DOMINATED in inbox.values():
            return StepResult(state, outbox={p: GONE for p in state.alive}, commits=[Commit(None, False)], halt=True)
        return StepResult(state)
