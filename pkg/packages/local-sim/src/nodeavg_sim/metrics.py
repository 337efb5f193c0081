"""Averaged complexity measures computed exactly from execution traces."""

from __future__ import annotations

from collections.abc import Iterable, Sequence
from decimal import Decimal, localcontext
from fractions import Fraction

import numpy as np
from loguru import logger
from pydantic import BaseModel, ConfigDict, Field

from nodeavg_graph import Graph, InputError

from .engine import completion_times
from .types import ExecutionTrace


class TrialSummary(BaseModel):
    model_config = ConfigDict(arbitrary_types_allowed=True)

    seed: int = Field(description="Seed of the run")
    n: int = Field(description="Node count")
    m: int = Field(description="Edge count")
    avg_v: Fraction = Field(description="Mean of T_v over nodes in this run")
    avg_e: Fraction = Field(description="Mean of T_e over edges in this run")
    rounds: int = Field(description="Rounds until the last output was committed")
    max_v: int = Field(default=0, description="Largest T_v in this run")


class RowAggregate(BaseModel):
    model_config = ConfigDict(arbitrary_types_allowed=True)

    trials: int
    avg_v: Fraction
    avg_e: Fraction
    worst: int


class ComplexityReport(BaseModel):
    """Node- and edge-averaged complexity over a set of seeded runs on one graph."""

    model_config = ConfigDict(arbitrary_types_allowed=True)

    avg_v: Fraction = Field(description="Mean over trials of the node-averaged completion time")
    avg_e: Fraction = Field(description="Mean over trials of the edge-averaged completion time")
    weighted_avg_v: Fraction = Field(description="Weight-averaged per-node trial means")
    exp_v: list[Fraction] = Field(description="Per-node mean of T_v over trials")
    exp_v_max: Fraction = Field(description="Largest per-node trial mean")
    exp_e_max: Fraction = Field(description="Largest per-edge trial mean")
    worst: int = Field(description="Largest rounds_elapsed over trials")
    trials: int = Field(description="Number of traces aggregated")
    rows: list[TrialSummary] = Field(default_factory=list, description="One summary per trace, in input order")

    def aggregate(self) -> RowAggregate:
        return RowAggregate(trials=self.trials, avg_v=self.avg_v, avg_e=self.avg_e, worst=self.worst)


def _mean(total: int, count: int) -> Fraction:
    return Fraction(total, count) if count else Fraction(0)


def report(
    traces: Sequence[ExecutionTrace],
    g: Graph,
    weights: Sequence[Fraction | int] | None = None,
) -> ComplexityReport:
    """Aggregate complete traces of one graph into a ComplexityReport.

    Raises InputError on an empty or incomplete trace set and on
    non-positive weights.
    """
    if not traces:
        raise InputError("report needs at least one trace")
    if weights is not None:
        if len(weights) != g.n:
            raise InputError(f"expected {g.n} weights, got {len(weights)}")
        w = [Fraction(x) for x in weights]
        if any(x <= 0 for x in w):
            raise InputError("weights must be positive")
    else:
        w = None

    node_sum = np.zeros(g.n, dtype=np.int64)
    edge_sum = np.zeros(g.m, dtype=np.int64)
    rows: list[TrialSummary] = []
    for trace in traces:
        if not trace.complete:
            raise InputError(f"trace seed={trace.seed} is incomplete")
        t_v, t_e = completion_times(trace, g)
        node_sum += t_v
        edge_sum += t_e
        rows.append(
            TrialSummary(
                seed=trace.seed,
                n=g.n,
                m=g.m,
                avg_v=_mean(int(t_v.sum()), g.n),
                avg_e=_mean(int(t_e.sum()), g.m),
                rounds=trace.rounds_elapsed,
                max_v=int(t_v.max()) if g.n else 0,
            )
        )

    trials = len(traces)
    exp_v = [Fraction(int(s), trials) for s in node_sum]
    if w is None:
        weighted = _mean(int(node_sum.sum()), g.n * trials)
    else:
        weighted = sum((wi * ev for wi, ev in zip(w, exp_v)), Fraction(0)) / sum(w, Fraction(0))
    out = ComplexityReport(
        avg_v=sum((r.avg_v for r in rows), Fraction(0)) / trials,
        avg_e=sum((r.avg_e for r in rows), Fraction(0)) / trials,
        weighted_avg_v=weighted,
        exp_v=exp_v,
        exp_v_max=max(exp_v, default=Fraction(0)),
        exp_e_max=Fraction(int(edge_sum.max()), trials) if g.m else Fraction(0),
        worst=max(t.rounds_elapsed for t in traces),
        trials=trials,
        rows=rows,
    )
    logger.debug("report trials={} avg_v={} avg_e={} worst={}", trials, float(out.avg_v), float(out.avg_e), out.worst)
    return out


def report_from_rows(rows: Iterable[TrialSummary]) -> RowAggregate:
    """Re-aggregate per-trial rows (e.g. parsed back from CSV)."""
    rows = list(rows)
    if not rows:
        raise InputError("no rows to aggregate")
    trials = len(rows)
    return RowAggregate(
        trials=trials,
        avg_v=sum((r.avg_v for r in rows), Fraction(0)) / trials,
        avg_e=sum((r.avg_e for r in rows), Fraction(0)) / trials,
        worst=max(r.rounds for r in rows),
    )


def rational_columns(x: Fraction) -> tuple[str, int, int]:
    """Decimal with 9 digits plus the exact numerator and denominator."""
    with localcontext() as ctx:
        ctx.prec = 60
        text = format(Decimal(x.numerator) / Decimal(x.denominator), ".9f")
    return text, x.numerator, x.denominator


class SurvivalStep(BaseModel):
    iteration: int
    live: int = Field(description="Entities still undecided when the iteration starts")
    removed: int = Field(description="Entities committed during the iteration")

    @property
    def fraction(self) -> float:
        return self.removed / self.live if self.live else 0.0


def iteration_survival(trace: ExecutionTrace, g: Graph, period: int) -> list[SurvivalStep]:
    """Per-iteration removal counts for algorithms that repeat every ``period`` rounds.

    Iteration i covers rounds [i * period, (i + 1) * period).
    """
    if period < 1:
        raise InputError(f"period must be >= 1, got {period}")
    expected = g.m if trace.problem_kind.on_edges else g.n
    if trace.commit_round.size != expected:
        raise InputError(f"trace has {trace.commit_round.size} entities, graph has {expected}")
    rounds = trace.commit_round
    rounds = rounds[rounds >= 0]
    if rounds.size == 0:
        return []
    per_iteration = np.bincount(rounds // period)
    live = rounds.size - np.concatenate([[0], np.cumsum(per_iteration)[:-1]])
    return [SurvivalStep(iteration=i, live=int(live[i]), removed=int(per_iteration[i])) for i in range(per_iteration.size)]
