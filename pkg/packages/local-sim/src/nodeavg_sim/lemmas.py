"""Exact good-node and good-edge predicates charged by the randomized analyses."""

from __future__ import annotations

from collections import Counter
from fractions import Fraction

import numpy as np

from nodeavg_graph import Graph

_HALF = Fraction(1, 2)
_SLACK = 1e-9


def _two_ball(adj: list[list[int]], v: int) -> set[int]:
    out = {v}
    for u in adj[v]:
        out.add(u)
        out.update(adj[u])
    return out


def good_nodes_ruling(g: Graph) -> np.ndarray:
    """Mask of nodes v with sum of 1/(deg(u)+1) over u within distance 2 of v at least 1/2.

    Float sums decide clear cases; anything within rounding distance of 1/2
    is settled with exact fractions.
    """
    adj = g.adj
    degrees = g.degrees
    p = 1.0 / (degrees.astype(np.float64) + 1.0)
    good = np.zeros(g.n, dtype=bool)
    for v in range(g.n):
        members = np.fromiter(_two_ball(adj, v), dtype=np.int64)
        total = float(p[members].sum())
        if abs(total - 0.5) > _SLACK:
            good[v] = total > 0.5
            continue
        counts = Counter(degrees[members].tolist())
        exact = sum((Fraction(c, d + 1) for d, c in counts.items()), Fraction(0))
        good[v] = exact >= _HALF
    return good


def good_nodes_matching(g: Graph) -> np.ndarray:
    """Mask of nodes with at least deg(v)/3 neighbors of degree at most deg(v)."""
    degrees = g.degrees
    if g.m == 0:
        return np.ones(g.n, dtype=bool)
    low = degrees[g.indices] <= degrees[g.src]
    counts = np.bincount(g.src[low], minlength=g.n)
    return 3 * counts >= degrees


def good_edges_matching(g: Graph) -> np.ndarray:
    """Mask of edges with at least one good endpoint."""
    good = good_nodes_matching(g)
    if g.m == 0:
        return np.zeros(0, dtype=bool)
    return good[g.edges[:, 0]] | good[g.edges[:, 1]]
