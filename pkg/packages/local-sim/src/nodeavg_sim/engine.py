"""Synchronous round engine and the completion-time semantics built on it."""

from __future__ import annotations

from collections.abc import Sequence
from typing import Any

import numpy as np
from loguru import logger

from nodeavg_graph import ContractViolation, Graph, InputError, SimulationTimeout

from .program import NodeProgram, PhasedProgram, RoundLedger
from .types import ExecutionTrace, NodeContext, StepResult

DEFAULT_MAX_ROUNDS = 10_000


class SyncEngine:
    """Runs a NodeProgram round by round on a fixed graph.

    Step r of every live node sees exactly the messages sent at round r - 1.
    Halted nodes neither step nor receive. Edge entities may be committed by
    either endpoint; both commits must agree and the earlier round counts.
    """

    def __init__(self, program: NodeProgram, g: Graph, seed: int, max_rounds: int) -> None:
        if max_rounds < 0:
            raise InputError(f"max_rounds must be non-negative, got {max_rounds}")
        self.program = program
        self.g = g
        self.seed = seed
        self.max_rounds = max_rounds
        self.on_edges = program.problem.on_edges
        size = g.m if self.on_edges else g.n
        self.commit_round = np.full(size, -1, dtype=np.int64)
        self.outputs: list[Any] = [None] * size
        self.pending = size

    def _record(self, v: int, port: int | None, value: Any, round_no: int) -> None:
        g = self.g
        if self.on_edges:
            if port is None or not 0 <= port < g.degree(v):
                raise ContractViolation(f"node {v} committed an edge through invalid port {port}")
            idx = int(g.edge_ids[g.indptr[v] + port])
        else:
            if port is not None:
                raise ContractViolation(f"node {v} committed an edge in a node problem")
            idx = v
        previous = self.commit_round[idx]
        if previous >= 0:
            if self.outputs[idx] != value:
                raise ContractViolation(
                    f"node {v} re-committed entity {idx} as {value!r}, already {self.outputs[idx]!r}"
                )
            return
        self.commit_round[idx] = round_no
        self.outputs[idx] = value
        self.pending -= 1

    def _trace(self, rounds_elapsed: int, timed_out: bool) -> ExecutionTrace:
        return ExecutionTrace(
            problem_kind=self.program.problem,
            algorithm=self.program.name,
            commit_round=self.commit_round.copy(),
            outputs=tuple(self.outputs),
            rounds_elapsed=rounds_elapsed,
            seed=self.seed,
            timed_out=timed_out,
        )

    def _deliver(self, v: int, result: StepResult, inboxes: list[dict[int, Any]], alive: np.ndarray) -> None:
        g = self.g
        start = int(g.indptr[v])
        deg = int(g.indptr[v + 1]) - start
        if result.broadcast is not None:
            outgoing = {p: result.broadcast for p in range(deg)}
            outgoing.update(result.outbox)
        else:
            outgoing = result.outbox
        for port, msg in outgoing.items():
            if not 0 <= port < deg:
                raise ContractViolation(f"node {v} sent on invalid port {port}")
            slot = start + port
            u = int(g.indices[slot])
            if alive[u]:
                inboxes[u][int(g.reverse[slot]) - int(g.indptr[u])] = msg

    def run(self, node_order: Sequence[int] | None = None) -> ExecutionTrace:
        g, program = self.g, self.program
        order = list(range(g.n)) if node_order is None else [int(v) for v in node_order]
        if sorted(order) != list(range(g.n)):
            raise InputError("node_order must be a permutation of the node ids")

        max_degree = g.max_degree
        contexts = [NodeContext(v, g.degree(v), g.n, max_degree, self.seed) for v in range(g.n)]
        states = [program.initialize(ctx) for ctx in contexts]
        alive = np.ones(g.n, dtype=bool)
        inboxes: list[dict[int, Any]] = [{} for _ in range(g.n)]

        round_no = 0
        while True:
            results: list[tuple[int, StepResult]] = []
            for v in order:
                if not alive[v]:
                    continue
                result = program.step(contexts[v], states[v], round_no, inboxes[v])
                states[v] = result.state
                for commit in result.commits:
                    self._record(v, commit.port, commit.value, round_no)
                results.append((v, result))

            if self.pending == 0:
                logger.debug("{} finished seed={} rounds={}", program.name, self.seed, round_no)
                return self._trace(round_no, timed_out=False)

            for v, result in results:
                if result.halt:
                    alive[v] = False
            if not alive.any():
                raise ContractViolation(f"{program.name} halted every node with {self.pending} outputs missing")
            if round_no >= self.max_rounds:
                raise SimulationTimeout(
                    f"{program.name} did not finish within {self.max_rounds} rounds",
                    self._trace(self.max_rounds, timed_out=True),
                )

            inboxes = [{} for _ in range(g.n)]
            for v, result in results:
                self._deliver(v, result, inboxes, alive)
            round_no += 1


def run(
    program: NodeProgram | PhasedProgram,
    g: Graph,
    seed: int,
    max_rounds: int = DEFAULT_MAX_ROUNDS,
    node_order: Sequence[int] | None = None,
) -> ExecutionTrace:
    """Execute one seeded run and return its trace.

    Raises SimulationTimeout (carrying the partial trace) when ``max_rounds``
    pass with outputs still missing.
    """
    if isinstance(program, PhasedProgram):
        ledger = RoundLedger(g, program.problem, program.name, seed, max_rounds)
        program.execute(g, ledger, seed)
        trace = ledger.trace()
        if not trace.complete:
            missing = int(np.count_nonzero(trace.commit_round < 0))
            raise ContractViolation(f"{program.name} finished with {missing} outputs missing")
        logger.debug("{} finished seed={} rounds={}", program.name, seed, trace.rounds_elapsed)
        return trace
    return SyncEngine(program, g, seed, max_rounds).run(node_order)


def completion_times(trace: ExecutionTrace, g: Graph) -> tuple[np.ndarray, np.ndarray]:
    """T_v per node and T_e per edge; -1 where some required output is missing.

    A node problem completes an edge once both endpoints are done; an edge
    problem completes a node once all incident edges are done (isolated nodes
    at round 0).
    """
    rounds = trace.commit_round
    src, dst = g.edges[:, 0], g.edges[:, 1]
    if not trace.problem_kind.on_edges:
        t_v = rounds.copy()
        t_e = np.maximum(rounds[src], rounds[dst])
        t_e[(rounds[src] < 0) | (rounds[dst] < 0)] = -1
        return t_v, t_e

    t_e = rounds.copy()
    t_v = np.zeros(g.n, dtype=np.int64)
    has_edges = g.degrees > 0
    if g.m:
        slot_round = rounds[g.edge_ids]
        starts = g.indptr[:-1][has_edges]
        t_v[has_edges] = np.maximum.reduceat(slot_round, starts)
        missing = np.minimum.reduceat(slot_round, starts) < 0
        t_v[np.flatnonzero(has_edges)[missing]] = -1
    return t_v, t_e
