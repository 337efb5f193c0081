"""Exception hierarchy shared by the graph kit and the simulator."""

from __future__ import annotations

from typing import Any


class NodeAvgError(RuntimeError):
    """Base class for every error raised by nodeavg packages."""


class InputError(NodeAvgError):
    """A precondition on caller-supplied input does not hold."""


class ContractViolation(NodeAvgError):
    """A component broke an API contract (double commit, non-tree view, ...)."""


class ConstructionInvariantError(NodeAvgError):
    """An internal construction invariant failed; the instance is malformed."""


class SimulationTimeout(NodeAvgError):
    """The round cap was reached before every required entity committed.

    The partial trace is attached as ``trace``.
    """

    def __init__(self, message: str, trace: Any) -> None:
        super().__init__(message)
        self.trace = trace


class RounderContractError(NodeAvgError):
    """A matching rounder returned a non-matching or an underweight matching."""

    def __init__(self, message: str, diagnostics: dict[str, Any] | None = None) -> None:
        super().__init__(message)
        self.diagnostics = diagnostics or {}
