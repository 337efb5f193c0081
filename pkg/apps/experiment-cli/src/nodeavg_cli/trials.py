"""Seeded trials of one algorithm on one graph, run in a thread pool."""

from __future__ import annotations

import asyncio
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction

from loguru import logger

from nodeavg_graph import ROOT, ClusterGraph, Graph, SimulationTimeout, ValidationReport
from nodeavg_sim import (
    ALGORITHMS,
    AlgorithmConfig,
    ExecutionTrace,
    ProblemKind,
    TrialSummary,
    build_program,
    iteration_survival,
    report,
    run,
    validate_trace,
)

from .fileformat import AnyGraph, plain
from .models import TrialRow


@dataclass(frozen=True)
class TrialOutcome:
    seed: int
    trace: ExecutionTrace
    validation: ValidationReport | None

    @property
    def timed_out(self) -> bool:
        return self.trace.timed_out


def run_trial(g: Graph, config: AlgorithmConfig, seed: int, max_rounds: int) -> TrialOutcome:
    """One run; a timeout yields the partial trace instead of raising."""
    program = build_program(config)
    try:
        trace = run(program, g, seed, max_rounds)
    except SimulationTimeout as exc:
        logger.warning("trial seed={} hit the round cap {}", seed, max_rounds)
        return TrialOutcome(seed, exc.trace, None)
    validation = validate_trace(config, g, trace)
    logger.debug("trial seed={} rounds={} valid={}", seed, trace.rounds_elapsed, validation.ok)
    return TrialOutcome(seed, trace, validation)


async def run_trials(
    g: Graph, config: AlgorithmConfig, seeds: range, max_rounds: int, threads: int = 1
) -> list[TrialOutcome]:
    """All seeds, ordered by seed whatever order they finish in."""
    loop = asyncio.get_running_loop()
    with ThreadPoolExecutor(max_workers=max(1, threads)) as executor:
        futures = [loop.run_in_executor(executor, run_trial, g, config, seed, max_rounds) for seed in seeds]
        outcomes = await asyncio.gather(*futures)
    return sorted(outcomes, key=lambda o: o.seed)


# ----------------------------------------------------------------------
# Rows
# ----------------------------------------------------------------------


def s0_fraction(g: ClusterGraph, trace: ExecutionTrace) -> Fraction:
    """|MIS ∩ S(c0)| / |S(c0)|."""
    s0 = g.members[ROOT]
    chosen = set(trace.selected.tolist())
    return Fraction(sum(1 for v in s0.tolist() if v in chosen), len(s0))


def removal_fraction(config: AlgorithmConfig, g: Graph, trace: ExecutionTrace) -> Fraction | None:
    """Smallest per-iteration fraction of live edges a matching run removed."""
    if trace.problem_kind is not ProblemKind.EDGE or not g.m:
        return None
    entry = ALGORITHMS[config.name]
    if entry.period is not None:
        steps = [Fraction(s.removed, s.live) for s in iteration_survival(trace, g, entry.period) if s.live]
    else:
        steps = [
            Fraction(it["removed"], it["edges"])
            for it in trace.annotations.get("iterations", [])
            if it.get("edges")
        ]
    return min(steps, default=None)


def _row(
    config: AlgorithmConfig, g: AnyGraph, outcome: TrialOutcome, summary: TrialSummary | None, graph_id: str
) -> TrialRow:
    graph = plain(g)
    trace = outcome.trace
    valid = outcome.validation is not None and outcome.validation.ok
    row = TrialRow(
        graph_id=graph_id,
        algorithm=config.name.value,
        seed=outcome.seed,
        n=graph.n,
        m=graph.m,
        avg_v=summary.avg_v if summary else Fraction(0),
        avg_e=summary.avg_e if summary else Fraction(0),
        worst=trace.rounds_elapsed,
        valid=valid,
        timed_out=outcome.timed_out,
        violations=";".join(sorted(outcome.validation.kinds())) if outcome.validation else "timeout",
    )
    if summary is None:
        return row
    row.exp_v_max = Fraction(summary.max_v)
    if ALGORITHMS[config.name].is_mis and isinstance(g, ClusterGraph):
        row.s0_fraction = s0_fraction(g, trace)
    row.removal_fraction = removal_fraction(config, graph, trace)
    return row


def trial_rows(
    config: AlgorithmConfig, g: AnyGraph, outcomes: list[TrialOutcome], graph_id: str = ""
) -> list[TrialRow]:
    """Per-trial rows followed by one aggregate row over the completed trials."""
    graph = plain(g)
    done = [o for o in outcomes if not o.timed_out]
    summaries: dict[int, TrialSummary] = {}
    aggregate = None
    if done:
        rep = report([o.trace for o in done], graph)
        summaries = {r.seed: r for r in rep.rows}
        aggregate = rep
    rows = [_row(config, g, o, summaries.get(o.seed), graph_id) for o in outcomes]
    if aggregate is not None:
        s0 = [r.s0_fraction for r in rows if r.s0_fraction is not None]
        removal = [r.removal_fraction for r in rows if r.removal_fraction is not None]
        rows.append(
            TrialRow(
                kind="aggregate",
                graph_id=graph_id,
                algorithm=config.name.value,
                seed=outcomes[0].seed,
                n=graph.n,
                m=graph.m,
                avg_v=aggregate.avg_v,
                avg_e=aggregate.avg_e,
                worst=aggregate.worst,
                exp_v_max=aggregate.exp_v_max,
                valid=all(r.valid for r in rows),
                timed_out=any(r.timed_out for r in rows),
                s0_fraction=min(s0) if s0 else None,
                removal_fraction=min(removal) if removal else None,
                violations=";".join(sorted({k for r in rows for k in r.violations.split(";") if k})),
            )
        )
    return rows
