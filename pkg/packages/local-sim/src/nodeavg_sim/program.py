"""Program contracts: per-node state machines and phased LOCAL simulations."""

from __future__ import annotations

from abc import ABC, abstractmethod
from typing import Any, ClassVar

import numpy as np
from loguru import logger

from nodeavg_graph import ContractViolation, Graph, InputError, SimulationTimeout

from .types import ExecutionTrace, NodeContext, ProblemKind, StepResult


class NodeProgram(ABC):
    """A synchronous message-passing algorithm, one state machine per node.

    ``step`` at round 0 runs before any message exchange; a message placed in
    the outbox at round r is in the neighbor's inbox at round r + 1, keyed by
    the receiver's port.
    """

    name: ClassVar[str]
    problem: ClassVar[ProblemKind]

    @abstractmethod
    def initialize(self, ctx: NodeContext) -> Any: ...

    @abstractmethod
    def step(self, ctx: NodeContext, state: Any, round_no: int, inbox: dict[int, Any]) -> StepResult: ...


class PhasedProgram(ABC):
    """A LOCAL algorithm simulated phase by phase.

    Each phase reads at most a bounded radius of the current state and charges
    exactly that many rounds on the ledger before committing.
    """

    name: ClassVar[str]
    problem: ClassVar[ProblemKind]

    @abstractmethod
    def execute(self, g: Graph, ledger: RoundLedger, seed: int) -> None: ...


class RoundLedger:
    def __init__(self, g: Graph, problem: ProblemKind, algorithm: str, seed: int, max_rounds: int) -> None:
        if max_rounds < 0:
            raise InputError(f"max_rounds must be non-negative, got {max_rounds}")
        self.g = g
        self.problem = problem
        self.algorithm = algorithm
        self.seed = seed
        self.max_rounds = max_rounds
        size = g.m if problem.on_edges else g.n
        self._commit_round = np.full(size, -1, dtype=np.int64)
        self._outputs: list[Any] = [None] * size
        self._round = 0
        self.annotations: dict[str, Any] = {}

    @property
    def round(self) -> int:
        return self._round

    def charge(self, rounds: int, reason: str) -> int:
        if rounds < 0:
            raise ContractViolation(f"negative round charge {rounds} for {reason}")
        self.advance_to(self._round + rounds)
        logger.debug("{} charged {} rounds for {} (now {})", self.algorithm, rounds, reason, self._round)
        return self._round

    def advance_to(self, round_no: int) -> None:
        if round_no > self.max_rounds:
            self._round = self.max_rounds
            trace = self.trace(timed_out=True)
            raise SimulationTimeout(f"{self.algorithm} needs more than {self.max_rounds} rounds", trace)
        self._round = max(self._round, round_no)

    def _commit(self, idx: int, value: Any, at: int | None, what: str) -> None:
        when = self._round if at is None else at
        if when < self._round:
            raise ContractViolation(f"{what} {idx} committed in the past (round {when} < {self._round})")
        if when > self.max_rounds:
            self.advance_to(when)
        previous = self._commit_round[idx]
        if previous >= 0:
            if self._outputs[idx] != value:
                raise ContractViolation(f"{what} {idx} re-committed {value!r} after {self._outputs[idx]!r}")
            self._commit_round[idx] = min(previous, when)
            return
        self._commit_round[idx] = when
        self._outputs[idx] = value

    def commit_node(self, v: int, value: Any, at: int | None = None) -> None:
        if self.problem.on_edges:
            raise ContractViolation(f"{self.algorithm} commits edges, not node {v}")
        self._commit(v, value, at, "node")

    def commit_edge(self, e: int, value: Any, at: int | None = None) -> None:
        if not self.problem.on_edges:
            raise ContractViolation(f"{self.algorithm} commits nodes, not edge {e}")
        self._commit(e, value, at, "edge")

    def is_committed(self, idx: int) -> bool:
        return bool(self._commit_round[idx] >= 0)

    def record_iteration(self, **fields: Any) -> None:
        self.annotations.setdefault("iterations", []).append(fields)

    def trace(self, timed_out: bool = False) -> ExecutionTrace:
        committed = self._commit_round[self._commit_round >= 0]
        elapsed = self.max_rounds if timed_out else int(committed.max()) if committed.size else 0
        return ExecutionTrace(
            problem_kind=self.problem,
            algorithm=self.algorithm,
            commit_round=self._commit_round.copy(),
            outputs=tuple(self._outputs),
            rounds_elapsed=elapsed,
            seed=self.seed,
            annotations=self.annotations,
            timed_out=timed_out,
        )
