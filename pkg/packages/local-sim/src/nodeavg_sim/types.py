"""Core value types shared by the round engine and the phased simulator."""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from functools import cached_property
from typing import Any

import numpy as np

from nodeavg_graph.graph import readonly


class ProblemKind(str, Enum):
    NODE = "node"
    EDGE = "edge"
    ORIENTATION = "orientation"

    @property
    def on_edges(self) -> bool:
        return self is not ProblemKind.NODE


@dataclass
class NodeContext:
    """What a node knows before the first message: its id, degree, n, Δ and its random stream."""

    node_id: int
    degree: int
    n: int
    max_degree: int
    seed: int

    @cached_property
    def rng(self) -> np.random.Generator:
        # keyed by (seed, node) so draws never depend on processing order
        return np.random.Generator(np.random.PCG64([self.seed, self.node_id]))


@dataclass(frozen=True)
class Commit:
    """Final output for the node itself (port None) or for the edge behind a port."""

    port: int | None
    value: Any


@dataclass
class StepResult:
    state: Any
    outbox: dict[int, Any] = field(default_factory=dict)
    broadcast: Any = None
    commits: list[Commit] = field(default_factory=list)
    halt: bool = False


@dataclass(frozen=True)
class ExecutionTrace:
    """Per-entity commit rounds and outputs of one seeded run.

    ``commit_round`` and ``outputs`` are indexed by node id for node problems
    and by edge id otherwise; -1 / None mark entities that never committed.
    """

    problem_kind: ProblemKind
    algorithm: str
    commit_round: np.ndarray
    outputs: tuple[Any, ...]
    rounds_elapsed: int
    seed: int
    annotations: dict[str, Any] = field(default_factory=dict)
    timed_out: bool = False

    def __post_init__(self) -> None:
        object.__setattr__(self, "commit_round", readonly(np.asarray(self.commit_round, dtype=np.int64)))

    @property
    def complete(self) -> bool:
        return not self.timed_out and bool(np.all(self.commit_round >= 0))

    @property
    def selected(self) -> np.ndarray:
        """Entities whose output is True (MIS / ruling-set members, matched edges)."""
        return np.flatnonzero(np.array([o is True for o in self.outputs], dtype=bool))

    def same_as(self, other: ExecutionTrace) -> bool:
        return (
            self.problem_kind is other.problem_kind
            and self.rounds_elapsed == other.rounds_elapsed
            and np.array_equal(self.commit_round, other.commit_round)
            and self.outputs == other.outputs
        )
