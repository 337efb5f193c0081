"""Deterministic symmetry breaking: Linial color reduction, greedy MIS by color,
and Cole-Vishkin 3-coloring of rooted forests.

The node program and the centralized ``linial_greedy_mis`` compute the same
MIS in the same rounds; phased algorithms use the latter.
"""

from __future__ import annotations

import math
from collections.abc import Iterable, Sequence
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Any

import numpy as np

from nodeavg_graph import Graph, InputError

from ..program import NodeProgram
from ..types import Commit, NodeContext, ProblemKind, StepResult

IN = "in"
OUT = "out"
FOREST_MIS_ROUNDS = 3


def log_star(n: int) -> int:
    count, x = 0, float(n)
    while x > 1.0:
        x = math.log2(x)
        count += 1
    return count


def _is_prime(q: int) -> bool:
    if q < 2:
        return False
    i = 2
    while i * i <= q:
        if q % i == 0:
            return False
        i += 1
    return True


def _next_prime(q: int) -> int:
    q = max(q, 2)
    while not _is_prime(q):
        q += 1
    return q


def _int_root_ceil(m: int, k: int) -> int:
    """Smallest b with b**k >= m."""
    b = max(1, int(round(m ** (1.0 / k))))
    while b**k < m:
        b += 1
    while b > 1 and (b - 1) ** k >= m:
        b -= 1
    return b


@lru_cache(maxsize=256)
def linial_schedule(n: int, max_degree: int) -> tuple[tuple[int, int], ...]:
    """Reduction steps (q, t) taking ids 0..n-1 down to q*q colors per step.

    A color below q**(t+1) is read as a polynomial of degree t over GF(q);
    q > max_degree * t guarantees a free evaluation point.
    """
    if max_degree <= 0:
        return ()
    steps: list[tuple[int, int]] = []
    palette = n
    while palette > 1:
        best: tuple[int, int] | None = None
        for t in range(1, max(2, palette.bit_length()) + 1):
            q = _next_prime(max(max_degree * t + 1, _int_root_ceil(palette, t + 1)))
            if best is None or q < best[0]:
                best = (q, t)
        q, t = best
        if q * q >= palette:
            break
        steps.append((q, t))
        palette = q * q
    return tuple(steps)


def palette_size(n: int, max_degree: int) -> int:
    steps = linial_schedule(n, max_degree)
    return steps[-1][0] ** 2 if steps else n


def _evaluations(color: int, q: int, t: int) -> list[int]:
    digits = []
    for _ in range(t + 1):
        color, d = divmod(color, q)
        digits.append(d)
    return [sum(d * pow(x, i, q) for i, d in enumerate(digits)) % q for x in range(q)]


def linial_recolor(color: int, neighbor_colors: Iterable[int], q: int, t: int) -> int:
    mine = _evaluations(color, q, t)
    others = [_evaluations(c, q, t) for c in neighbor_colors]
    for x in range(q):
        if all(ev[x] != mine[x] for ev in others):
            return x * q + mine[x]
    raise InputError(f"no free evaluation point for color {color} (q={q}, t={t})")


# ----------------------------------------------------------------------
# Node program
# ----------------------------------------------------------------------


@dataclass
class _State:
    color: int = 0
    lower: set[int] = field(default_factory=set)


class LinialMis(NodeProgram):
    """Color reduction for len(schedule) rounds, then greedy MIS by color."""

    name = "linial-mis"
    problem = ProblemKind.NODE

    def initialize(self, ctx: NodeContext) -> _State:
        return _State(color=ctx.node_id)

    def step(self, ctx: NodeContext, state: _State, round_no: int, inbox: dict[int, Any]) -> StepResult:
        schedule = linial_schedule(ctx.n, ctx.max_degree)
        steps = len(schedule)
        if round_no == 0:
            if ctx.degree == 0:
                return StepResult(state, commits=[Commit(None, True)], halt=True)
            return StepResult(state, broadcast=state.color)
        if round_no <= steps:
            q, t = schedule[round_no - 1]
            state.color = linial_recolor(state.color, inbox.values(), q, t)
            return StepResult(state, broadcast=state.color)
        if round_no == steps + 1:
            state.lower = {p for p, c in inbox.items() if c < state.color}
        else:
            if IN in inbox.values():
                return StepResult(state, broadcast=OUT, commits=[Commit(None, False)], halt=True)
            state.lower -= {p for p, msg in inbox.items() if msg == OUT}
        if not state.lower:
            return StepResult(state, broadcast=IN, commits=[Commit(None, True)], halt=True)
        return StepResult(state)


# ----------------------------------------------------------------------
# Centralized equivalents
# ----------------------------------------------------------------------


@dataclass(frozen=True)
class MisOutcome:
    """Members plus the round (relative to the start) at which each node decided."""

    members: frozenset[int]
    decided: dict[int, int]

    @property
    def rounds(self) -> int:
        return max(self.decided.values(), default=0)


def linial_colors(g: Graph, n: int | None = None, ids: Sequence[int] | None = None) -> tuple[np.ndarray, int]:
    """Final Linial colors of every node and the number of reduction rounds.

    ``ids`` relabels the nodes (e.g. parent-graph ids of an induced subgraph)
    and ``n`` is the size of the id space the schedule is computed for.
    """
    n = g.n if n is None else n
    schedule = linial_schedule(n, g.max_degree)
    colors = np.asarray(ids if ids is not None else range(g.n), dtype=np.int64).copy()
    adj = g.adj
    for q, t in schedule:
        colors = np.array(
            [linial_recolor(int(colors[v]), (int(colors[u]) for u in adj[v]), q, t) for v in range(g.n)],
            dtype=np.int64,
        )
    return colors, len(schedule)


def linial_greedy_mis(g: Graph, n: int | None = None, ids: Sequence[int] | None = None) -> MisOutcome:
    """Same MIS and decision rounds as running LinialMis on ``g``."""
    colors, steps = linial_colors(g, n, ids)
    adj = g.adj
    start = steps + 1
    joined: dict[int, int] = {}
    left: dict[int, int] = {}
    for v in sorted(range(g.n), key=lambda x: int(colors[x])):
        if not adj[v]:
            joined[v] = 0
            continue
        lower = [u for u in adj[v] if colors[u] < colors[v]]
        winners = [joined[u] for u in lower if u in joined]
        if winners:
            left[v] = 1 + min(winners)
        else:
            joined[v] = max([start] + [1 + left[u] for u in lower])
    return MisOutcome(members=frozenset(joined), decided={**joined, **left})


def cole_vishkin_3color(parent: Sequence[int], ids: Sequence[int] | None = None) -> tuple[np.ndarray, int]:
    """Proper 3-coloring of a rooted forest (parent -1 at roots) and its round count.

    Bit-position reduction until fewer than 6 colors remain, then shift-down
    and recolor for classes 5, 4 and 3 (two rounds each).
    """
    parent = np.asarray(parent, dtype=np.int64)
    size = parent.shape[0]
    colors = np.asarray(ids if ids is not None else range(size), dtype=np.int64).copy()
    is_root = parent < 0
    safe_parent = np.where(is_root, np.arange(size), parent)
    rounds = 0
    while size and colors.max() >= 6:
        diff = colors ^ colors[safe_parent]
        diff[is_root] = 1
        low = np.log2(diff & -diff).astype(np.int64)
        colors = 2 * low + ((colors >> low) & 1)
        rounds += 1

    children: dict[int, list[int]] = {}
    for v in range(size):
        if not is_root[v]:
            children.setdefault(int(parent[v]), []).append(v)
    for target in (5, 4, 3):
        old = colors.copy()
        shifted = np.where(is_root, 0, old[safe_parent])
        for v in np.flatnonzero(is_root).tolist():
            shifted[v] = min(c for c in (0, 1, 2) if c != old[v])
        colors = shifted
        for v in np.flatnonzero(colors == target).tolist():
            used = set()
            if not is_root[v]:
                used.add(int(colors[parent[v]]))
            used.update(int(colors[c]) for c in children.get(v, []))
            colors[v] = min(c for c in (0, 1, 2) if c not in used)
        rounds += 2
    return colors, rounds


def forest_mis(parent: Sequence[int], colors: np.ndarray) -> np.ndarray:
    """MIS of a 3-colored forest, one color class per round (3 rounds)."""
    parent = np.asarray(parent, dtype=np.int64)
    size = parent.shape[0]
    neighbors: list[list[int]] = [[] for _ in range(size)]
    for v in range(size):
        if parent[v] >= 0:
            neighbors[v].append(int(parent[v]))
            neighbors[int(parent[v])].append(v)
    chosen = np.zeros(size, dtype=bool)
    for c in (0, 1, 2):
        for v in np.flatnonzero(colors == c).tolist():
            if not any(chosen[u] for u in neighbors[v]):
                chosen[v] = True
    return chosen

