"""Exact membership check for the cluster-tree graph family."""

from __future__ import annotations

import numpy as np
from loguru import logger

from .construct import ClusterGraph, exponent_table
from .reports import ValidationReport
from .skeleton import NodeKind

MAX_REPORTED = 10_000


def _expected_counts(g: ClusterGraph) -> np.ndarray:
    ct = g.skeleton
    table = np.zeros((ct.size, ct.size), dtype=np.int64)
    for e in ct.edges:
        table[e.source, e.target] = e.multiplicity(ct.beta)
    return table


def _expected_label_counts(g: ClusterGraph) -> np.ndarray:
    """Per cluster, the number of outgoing edges labeled beta^i."""
    ct = g.skeleton
    table = np.zeros((ct.size, ct.k + 2), dtype=np.int64)
    for node in ct.nodes:
        if node.kind is NodeKind.INTERNAL:
            table[node.id, : ct.k + 1] = [2 * ct.beta**i for i in range(ct.k + 1)]
        else:
            table[node.id, node.psi] = 2 * ct.beta**node.psi
    return table


def validate_family(g: ClusterGraph, limit: int = MAX_REPORTED) -> ValidationReport:
    """Check that ``g`` realizes its skeleton exactly.

    Reports per-node neighbor-count mismatches for every skeleton edge, edges
    not induced by any skeleton edge, wrong labels, and outgoing-label counts.
    Label counts are only checked on nodes whose neighbor counts are right,
    since a count mismatch already implies them.
    """
    graph, ct = g.graph, g.skeleton
    report = ValidationReport(
        subject=f"family CT_{ct.k} beta={ct.beta} q={g.lift_order}",
        checked=graph.n,
    )
    n, size = graph.n, ct.size
    src, dst = graph.src, graph.indices
    cu, cv = g.cluster_of[src], g.cluster_of[dst]
    expected = _expected_counts(g)

    def full() -> bool:
        if len(report.violations) >= limit:
            report.add("truncated", f"stopped after {limit} violations")
            return True
        return False

    extra = (expected[cu, cv] == 0) & (src < dst)
    for s in np.flatnonzero(extra):
        if full():
            return report
        u, v = int(src[s]), int(dst[s])
        report.add(
            "extra_edge",
            f"edge {u}-{v} joins clusters {int(cu[s])},{int(cv[s])} with no skeleton edge",
            nodes=[u, v],
            edges=[int(graph.edge_ids[s])],
        )

    counts = np.bincount(src * size + cv, minlength=n * size).reshape(n, size) if n else np.zeros((0, size))
    want = expected[g.cluster_of]
    bad = (counts != want) & (want > 0)
    for v, c in np.argwhere(bad):
        if full():
            return report
        report.add(
            "neighbor_count",
            f"node {int(v)} in cluster {int(g.cluster_of[v])} has {int(counts[v, c])} "
            f"neighbors in cluster {int(c)}, expected {int(want[v, c])}",
            nodes=[int(v)],
        )

    exp_ref = exponent_table(ct)[cu, cv]
    wrong = (exp_ref != g.slot_exp) | ((cu == cv) != g.slot_self)
    for s in np.flatnonzero(wrong):
        if full():
            return report
        report.add(
            "label",
            f"slot {int(src[s])}->{int(dst[s])} labeled ({int(g.slot_exp[s])},{bool(g.slot_self[s])}), "
            f"expected ({int(exp_ref[s])},{bool(cu[s] == cv[s])})",
            nodes=[int(src[s]), int(dst[s])],
            edges=[int(graph.edge_ids[s])],
        )

    width = ct.k + 2
    labeled = g.slot_exp >= 0
    per_exp = np.bincount(src[labeled] * width + g.slot_exp[labeled].astype(np.int64), minlength=n * width)
    per_exp = per_exp.reshape(n, width) if n else np.zeros((0, width))
    want_exp = _expected_label_counts(g)[g.cluster_of]
    clean = ~bad.any(axis=1)
    mismatched = clean & (per_exp != want_exp).any(axis=1)
    for v in np.flatnonzero(mismatched):
        if full():
            return report
        report.add(
            "label_count",
            f"node {int(v)} outgoing label counts {per_exp[v].tolist()}, expected {want_exp[v].tolist()}",
            nodes=[int(v)],
        )

    if report.violations:
        logger.warning("family check found {} violations: {}", len(report.violations), report.kinds())
    return report
