"""nodeavg local simulator -- synchronous LOCAL rounds with per-entity completion times.

Runs node programs round by round (or phased simulations on a round ledger),
records when every node or edge committed its output, and aggregates the
node- and edge-averaged complexity measures exactly.
"""

from nodeavg_graph import (
    ContractViolation,
    InputError,
    NodeAvgError,
    RounderContractError,
    SimulationTimeout,
)

from .algorithms import ALGORITHMS, AlgorithmConfig, AlgorithmName, RulingMode, build_program, validate_trace
from .engine import DEFAULT_MAX_ROUNDS, SyncEngine, completion_times, run
from .lemmas import good_edges_matching, good_nodes_matching, good_nodes_ruling
from .metrics import (
    ComplexityReport,
    RowAggregate,
    SurvivalStep,
    TrialSummary,
    iteration_survival,
    rational_columns,
    report,
    report_from_rows,
)
from .program import NodeProgram, PhasedProgram, RoundLedger
from .types import Commit, ExecutionTrace, NodeContext, ProblemKind, StepResult
from .validators import domination_radius, validate_matching, validate_mis, validate_orientation, validate_ruling_set

__all__ = [
    "ALGORITHMS",
    "DEFAULT_MAX_ROUNDS",
    "AlgorithmConfig",
    "AlgorithmName",
    "Commit",
    "ComplexityReport",
    "ContractViolation",
    "ExecutionTrace",
    "InputError",
    "NodeAvgError",
    "NodeContext",
    "NodeProgram",
    "PhasedProgram",
    "ProblemKind",
    "RoundLedger",
    "RounderContractError",
    "RowAggregate",
    "RulingMode",
    "SimulationTimeout",
    "StepResult",
    "SurvivalStep",
    "SyncEngine",
    "TrialSummary",
    "build_program",
    "completion_times",
    "domination_radius",
    "good_edges_matching",
    "good_nodes_matching",
    "good_nodes_ruling",
    "iteration_survival",
    "rational_columns",
    "report",
    "report_from_rows",
    "run",
    "validate_matching",
    "validate_mis",
    "validate_orientation",
    "validate_ruling_set",
    "validate_trace",
]
