"""Short-cycle search: shortest cycle through a node or through an edge."""

from __future__ import annotations

from collections.abc import Callable, Sequence
from fractions import Fraction
from itertools import product

from loguru import logger

from .errors import InputError
from .graph import Graph


def node_in_short_cycle(g: Graph, v: int, ell: int) -> int | None:
    """Length of a shortest cycle through ``v`` if it is at most ``ell``.

    BFS from ``v`` tags every node with the neighbor of ``v`` it was reached
    through; an edge joining two different tags closes a cycle of length
    ``d(x) + d(y) + 1`` and the minimum over such edges is exact.
    """
    if ell < 3:
        raise InputError(f"cycle length bound must be >= 3, got {ell}")
    v = g.check_node(v)
    adj = g.adj
    depth_cap = ell // 2
    dist = {v: 0}
    branch: dict[int, int] = {}
    frontier = []
    for u in adj[v]:
        dist[u] = 1
        branch[u] = u
        frontier.append(u)
    d = 1
    while frontier and d < depth_cap:
        nxt = []
        for x in frontier:
            for y in adj[x]:
                if y not in dist:
                    dist[y] = d + 1
                    branch[y] = branch[x]
                    nxt.append(y)
        frontier = nxt
        d += 1

    best: int | None = None
    for x, bx in branch.items():
        dx = dist[x]
        for y in adj[x]:
            by = branch.get(y)
            if by is None or by == bx or y < x:
                continue
            length = dx + dist[y] + 1
            if length <= ell and (best is None or length < best):
                best = length
    return best


def cycle_stats(g: Graph, ell: int) -> Fraction:
    """Exact fraction of nodes lying on a cycle of length at most ``ell``."""
    if ell < 3:
        raise InputError(f"cycle length bound must be >= 3, got {ell}")
    if g.n == 0:
        return Fraction(0)
    hits = sum(1 for v in range(g.n) if node_in_short_cycle(g, v, ell) is not None)
    logger.debug("cycle_stats ell={} n={} hits={}", ell, g.n, hits)
    return Fraction(hits, g.n)


def _layered_bfs_step(
    adj: Sequence[Sequence[int]],
    frontier: list[int],
    dist: dict[int, int],
    parents: dict[int, list[int]],
    banned: tuple[int, int],
) -> list[int]:
    nxt: list[int] = []
    a, b = banned
    for x in frontier:
        dx = dist[x]
        for y in adj[x]:
            if (x == a and y == b) or (x == b and y == a):
                continue
            dy = dist.get(y)
            if dy is None:
                dist[y] = dx + 1
                parents[y] = [x]
                nxt.append(y)
            elif dy == dx + 1:
                parents[y].append(x)
    return nxt


def _paths_to(root: int, target: int, parents: dict[int, list[int]]) -> list[list[int]]:
    """All shortest paths root -> target following BFS parent lists."""
    if target == root:
        return [[root]]
    out: list[list[int]] = []
    for p in parents[target]:
        for path in _paths_to(root, p, parents):
            out.append(path + [target])
    return out


def min_cycle_through_edge(
    adj: Sequence[Sequence[int]],
    u: int,
    v: int,
    limit: int,
    edge_key: Callable[[int, int], int],
) -> list[int] | None:
    """Smallest cycle of length <= ``limit`` that uses edge ``u``-``v``.

    Cycles are ordered by length, then by their sorted tuple of edge keys.
    Returns the node sequence starting at ``u`` and ending at ``v`` (the
    closing edge is ``v``-``u``), or ``None`` when no such cycle exists.
    Runs a bidirectional layered BFS in the graph minus the edge.
    """
    budget = limit - 1
    if budget < 2:
        return None
    # layers are complete, so the first meeting layer yields the exact distance
    du, dv = {u: 0}, {v: 0}
    pu: dict[int, list[int]] = {u: []}
    pv: dict[int, list[int]] = {v: []}
    fu, fv = [u], [v]
    a = b = 0
    dist: int | None = None
    while a + b < budget and (fu or fv):
        if (a <= b and fu) or not fv:
            fu = _layered_bfs_step(adj, fu, du, pu, (u, v))
            a += 1
            common = [x for x in fu if x in dv]
        else:
            fv = _layered_bfs_step(adj, fv, dv, pv, (u, v))
            b += 1
            common = [x for x in fv if x in du]
        if common:
            dist = min(du[x] + dv[x] for x in common)
            break
    if dist is None or dist > budget:
        return None

    split = min(a, dist)
    meet = sorted(x for x in du if du[x] == split and dv.get(x) == dist - split)
    best_key: tuple[int, ...] | None = None
    best_cycle: list[int] | None = None
    for x in meet:
        for left, right in product(_paths_to(u, x, pu), _paths_to(v, x, pv)):
            path = left + right[-2::-1]
            keys = [edge_key(path[i], path[i + 1]) for i in range(len(path) - 1)]
            keys.append(edge_key(v, u))
            key = tuple(sorted(keys))
            if best_key is None or key < best_key:
                best_key, best_cycle = key, path
    return best_cycle


def preferred_orientation(cycle: Sequence[int], edge_key: Callable[[int, int], int]) -> list[tuple[int, int]]:
    """Directed edges of ``cycle`` oriented consistently around it.

    The direction follows the minimum-key edge from its smaller endpoint.
    """
    size = len(cycle)
    hops = [(cycle[i], cycle[(i + 1) % size]) for i in range(size)]
    i_min = min(range(size), key=lambda i: edge_key(*hops[i]))
    a, b = hops[i_min]
    if a < b:
        return hops
    return [(y, x) for x, y in reversed(hops)]


def lift_cycle_bound(max_degree: int, ell: int, q: int) -> Fraction:
    """Reference line Delta^ell / q for the short-cycle fraction of a q-lift."""
    if q < 1:
        raise InputError(f"lift order must be >= 1, got {q}")
    return Fraction(max_degree**ell, q)


def cluster_cycle_reference(beta: int) -> Fraction:
    """Reference 1/beta for cycles of length <= 2k+1 in lifted cluster graphs."""
    return Fraction(1, beta)
