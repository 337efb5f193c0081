"""Problem validators. They never raise on bad outputs; they return reports."""

from __future__ import annotations

import numpy as np
from loguru import logger

from nodeavg_graph import Graph, InputError, ValidationReport, bfs_distances

from .types import ExecutionTrace, ProblemKind

MAX_REPORTED = 1_000


def _expect(trace: ExecutionTrace, g: Graph, kind: ProblemKind) -> None:
    size = g.m if kind.on_edges else g.n
    if trace.problem_kind is not kind or trace.commit_round.size != size:
        raise InputError(f"{trace.algorithm} trace ({trace.problem_kind.value}) does not fit a {kind.value} check")


def _flags(trace: ExecutionTrace, report: ValidationReport) -> np.ndarray:
    flags = np.array([o is True for o in trace.outputs], dtype=bool)
    missing = [i for i, o in enumerate(trace.outputs) if o is None]
    if missing:
        report.add("missing", f"{len(missing)} entities have no output", nodes=missing[:MAX_REPORTED])
    return flags


def _log(report: ValidationReport) -> ValidationReport:
    if not report.ok:
        logger.warning("{} failed: {}", report.subject, report.kinds())
    return report


def validate_mis(g: Graph, trace: ExecutionTrace) -> ValidationReport:
    _expect(trace, g, ProblemKind.NODE)
    report = ValidationReport(subject=f"mis:{trace.algorithm}", checked=g.n)
    chosen = _flags(trace, report)
    both = chosen[g.edges[:, 0]] & chosen[g.edges[:, 1]] if g.m else np.zeros(0, dtype=bool)
    for e in np.flatnonzero(both)[:MAX_REPORTED].tolist():
        report.add("independence", f"edge {e} joins two MIS nodes", nodes=g.edges[e].tolist(), edges=[e])
    covered = chosen.copy()
    if g.m:
        covered[g.indices[chosen[g.src]]] = True
    for v in np.flatnonzero(~covered)[:MAX_REPORTED].tolist():
        report.add("domination", f"node {v} has no MIS node in its closed neighborhood", nodes=[v])
    return _log(report)


def validate_ruling_set(g: Graph, trace: ExecutionTrace, alpha: int = 2, beta: int = 2) -> ValidationReport:
    """Members pairwise at distance >= alpha; everyone within beta of a member."""
    if alpha < 1 or beta < 0:
        raise InputError(f"invalid ruling-set parameters alpha={alpha} beta={beta}")
    _expect(trace, g, ProblemKind.NODE)
    report = ValidationReport(subject=f"ruling({alpha},{beta}):{trace.algorithm}", checked=g.n)
    chosen = _flags(trace, report)
    members = np.flatnonzero(chosen).tolist()
    member_set = set(members)
    for s in members:
        near = bfs_distances(g, [s], alpha - 1)
        clash = sorted(x for x in near if x != s and x in member_set and x > s)
        for x in clash:
            if len(report.violations) < MAX_REPORTED:
                report.add("distance", f"members {s} and {x} at distance {near[x]} < {alpha}", nodes=[s, x])
    reached = bfs_distances(g, members, beta) if members else {}
    for v in range(g.n):
        if v not in reached and len(report.violations) < MAX_REPORTED:
            report.add("domination", f"node {v} is farther than {beta} from the set", nodes=[v])
    return _log(report)


def domination_radius(g: Graph, trace: ExecutionTrace) -> int | None:
    """Largest distance from a node to the selected set; None if some node is unreachable."""
    members = trace.selected.tolist()
    if not members:
        return None if g.n else 0
    dist = bfs_distances(g, members)
    if len(dist) < g.n:
        return None
    return max(dist.values())


def validate_matching(g: Graph, trace: ExecutionTrace) -> ValidationReport:
    _expect(trace, g, ProblemKind.EDGE)
    report = ValidationReport(subject=f"matching:{trace.algorithm}", checked=g.m)
    chosen = _flags(trace, report)
    load = np.bincount(g.edges[chosen].ravel(), minlength=g.n) if g.m else np.zeros(g.n, dtype=np.int64)
    for v in np.flatnonzero(load > 1)[:MAX_REPORTED].tolist():
        report.add("conflict", f"node {v} is matched {int(load[v])} times", nodes=[v])
    matched = load > 0
    if g.m:
        free = ~matched[g.edges[:, 0]] & ~matched[g.edges[:, 1]]
        for e in np.flatnonzero(free)[:MAX_REPORTED].tolist():
            report.add("maximality", f"edge {e} has two unmatched endpoints", nodes=g.edges[e].tolist(), edges=[e])
    return _log(report)


def validate_orientation(g: Graph, trace: ExecutionTrace, min_degree: int = 3) -> ValidationReport:
    """Every node of degree >= min_degree has at least one outgoing edge."""
    _expect(trace, g, ProblemKind.ORIENTATION)
    report = ValidationReport(subject=f"orientation:{trace.algorithm}", checked=g.m)
    out_degree = np.zeros(g.n, dtype=np.int64)
    for e, head in enumerate(trace.outputs):
        u, v = (int(x) for x in g.edges[e])
        if head is None:
            report.add("missing", f"edge {e} is not oriented", edges=[e])
        elif head == v:
            out_degree[u] += 1
        elif head == u:
            out_degree[v] += 1
        else:
            report.add("head", f"edge {e} points to non-endpoint {head}", edges=[e])
    sinks = np.flatnonzero((out_degree == 0) & (g.degrees >= min_degree))
    for v in sinks[:MAX_REPORTED].tolist():
        report.add("sink", f"node {v} has no outgoing edge", nodes=[v])
    return _log(report)
