"""Deterministic sinkless orientation by short cycles, degree reduction,
clustering and contraction.

Every level works on a virtual multigraph whose nodes are physical cluster
centers. A port is one virtual edge seen from one end (or a self-loop) and
carries the physical path it stands for, so orienting a port orients every
physical edge on its path. Level 0 is the input graph itself; level l + 1
contracts the spiders of level l and costs (4r + 4) times more rounds per
step.
"""

from __future__ import annotations

import math
from collections import deque
from collections.abc import Iterable
from dataclasses import dataclass

import networkx as nx
from loguru import logger

from nodeavg_graph import ContractViolation, Graph, InputError, min_cycle_through_edge, preferred_orientation

from ..program import PhasedProgram, RoundLedger
from ..types import ProblemKind
from .coloring import linial_greedy_mis

Hop = tuple[int, int]


@dataclass(frozen=True)
class Port:
    key: int  # physical id of the crossing edge; names the virtual edge
    peer: int | None  # None for a self-loop
    path: tuple[Hop, ...]  # physical hops from this end outward


Ports = dict[int, dict[int, Port]]


def level_count(n: int) -> int:
    if n <= 4:
        return 1
    return max(1, math.ceil(math.log2(math.log2(n))))


class _Orienter:
    """Commits ports once each and remembers which keys are settled."""

    def __init__(self, g: Graph, ledger: RoundLedger, ports: Ports) -> None:
        self.g = g
        self.ledger = ledger
        self.ports = ports
        self.done: set[int] = set()

    def __call__(self, x: int, key: int, at: int | None = None) -> None:
        if key in self.done:
            return
        for a, b in self.ports[x][key].path:
            self.ledger.commit_edge(self.g.edge_id(a, b), b, at=at)
        self.done.add(key)

    def free(self, x: int, port: Port, at: int | None = None) -> None:
        """Orient an edge nobody relies on: loops outward, others toward the smaller center."""
        if port.peer is None:
            self(x, port.key, at)
        else:
            self(max(x, port.peer), port.key, at)


def _pair_keys(ports: Ports) -> dict[tuple[int, int], list[int]]:
    pairs: dict[tuple[int, int], list[int]] = {}
    for x, row in ports.items():
        for p in row.values():
            if p.peer is not None:
                pairs.setdefault((x, p.peer), []).append(p.key)
    for keys in pairs.values():
        keys.sort()
    return pairs


def _bfs(adj: dict[int, list[tuple[int, int]]], sources: Iterable[int], limit: int | None = None) -> dict[int, int]:
    dist: dict[int, int] = {}
    queue: deque[int] = deque()
    for s in sources:
        if s not in dist:
            dist[s] = 0
            queue.append(s)
    while queue:
        x = queue.popleft()
        if limit is not None and dist[x] >= limit:
            continue
        for y, _ in adj[x]:
            if y not in dist:
                dist[y] = dist[x] + 1
                queue.append(y)
    return dist


class SinklessOrientation(PhasedProgram):
    """Orient every edge so that each node has an outgoing edge.

    Needs minimum degree 3 and r >= 3. Edge outputs are head node ids.
    """

    name = "sinkless"
    problem = ProblemKind.ORIENTATION

    def __init__(self, r: int = 3) -> None:
        if r < 3:
            raise InputError(f"sinkless orientation needs r >= 3, got {r}")
        self.r = r

    def execute(self, g: Graph, ledger: RoundLedger, seed: int) -> None:
        if g.n == 0:
            return
        if g.min_degree < 3:
            raise InputError(f"sinkless orientation needs minimum degree 3, got {g.min_degree}")
        adj, slots = g.adj, g.slot_edge_lists
        ports: Ports = {
            v: {e: Port(e, u, ((v, u),)) for u, e in zip(adj[v], slots[v])} for v in range(g.n)
        }
        scale = 1
        for level in range(level_count(g.n)):
            if not ports:
                break
            ports = self._level(g, ledger, ports, scale, level)
            scale *= 4 * self.r + 4
        if ports:
            self._finish(g, ledger, ports, scale)

    # ------------------------------------------------------------------
    # One level
    # ------------------------------------------------------------------

    def _short_edges(self, ports: Ports, orient: _Orienter) -> set[int]:
        """Orient every virtual edge on a cycle of length <= 6r along its smallest such cycle.

        Cycles are ordered by length, then by their sorted edge keys.
        """
        pairs = _pair_keys(ports)
        nbrs = {x: sorted({p.peer for p in row.values() if p.peer is not None}) for x, row in ports.items()}

        def edge_key(a: int, b: int) -> int:
            return pairs[(a, b)][0]

        short: set[int] = set()
        for x in sorted(ports):
            for p in ports[x].values():
                y = p.peer
                if y is None or x > y:
                    continue
                parallel = [k for k in pairs[(x, y)] if k != p.key]
                if parallel:
                    # a 2-cycle; its smaller key runs from the smaller endpoint
                    tail = x if p.key < parallel[0] else y
                else:
                    cycle = min_cycle_through_edge(nbrs, x, y, 6 * self.r, edge_key)
                    if cycle is None:
                        continue
                    tail = x if (x, y) in preferred_orientation(cycle, edge_key) else y
                orient(tail, p.key)
                short.add(p.key)
        return short

    def _level(self, g: Graph, ledger: RoundLedger, ports: Ports, scale: int, level: int) -> Ports:
        r = self.r
        orient = _Orienter(g, ledger, ports)
        nodes = sorted(ports)

        ledger.charge(3 * r * scale, f"level {level} short cycles")
        short = self._short_edges(ports, orient)
        d1 = {x for x in nodes if any(p.key in short for p in ports[x].values())}
        for x in sorted(d1):
            for p in ports[x].values():
                if p.peer is None or p.peer in d1:
                    orient.free(x, p)

        rest = [x for x in nodes if x not in d1]
        stats = {"level": level, "nodes": len(nodes), "short": len(short), "decided": len(d1)}
        if not rest:
            ledger.record_iteration(**stats, virtual=0)
            return {}

        # each remaining node keeps three edges: loops first, then decided neighbors, then low ids
        ledger.charge(scale, f"level {level} degree reduction")

        def preference(p: Port) -> tuple[int, int, int]:
            rank = 0 if p.peer is None else 1 if p.peer in d1 else 2
            return rank, -1 if p.peer is None else p.peer, p.key

        chosen = {x: {p.key for p in sorted(ports[x].values(), key=preference)[:3]} for x in rest}
        reduced: dict[int, list[tuple[int, int]]] = {x: [] for x in rest}
        loops: dict[int, list[int]] = {x: [] for x in rest}
        for x in rest:
            for p in ports[x].values():
                y = p.peer
                if p.key in chosen[x]:
                    if y is not None and y in chosen and p.key in chosen[y]:
                        reduced[x].append((y, p.key))
                    else:
                        loops[x].append(p.key)
                elif y is None or y in d1 or p.key not in chosen[y]:
                    orient.free(x, p)

        looped = sorted(x for x in rest if loops[x])
        ledger.charge((2 * r + 1) * scale, f"level {level} loop distances")
        to_loop = _bfs(reduced, looped, 2 * r)
        far = [x for x in rest if x not in to_loop]
        spider_centers = self._spread_centers(g, ledger, reduced, far, scale, level)

        center, parent, depth = self._cluster(reduced, sorted(set(spider_centers) | set(looped)))
        missing = [x for x in rest if x not in center]
        if missing:
            raise ContractViolation(f"level {level}: nodes {missing[:5]} joined no cluster")
        ledger.charge(2 * (2 * r + 1) * scale, f"level {level} clustering")

        children: dict[int, list[int]] = {x: [] for x in rest}
        for x in rest:
            if parent[x] is not None:
                children[parent[x][0]].append(x)

        legs: dict[int, list[tuple[list[int], int]]] = {}
        owners: dict[int, list[int]] = {}
        on_leg: set[int] = set()
        carried: set[int] = set()
        for c in spider_centers:
            legs[c] = []
            for child in sorted(children[c]):
                branch, stack = [], [child]
                while stack:
                    x = stack.pop()
                    branch.append(x)
                    stack.extend(children[x])
                exits = [(depth[x], key, x) for x in branch for y, key in reduced[x] if center[y] != c]
                if not exits:
                    continue
                _, key, end = min(exits)
                leg = [end]
                while leg[-1] != c:
                    leg.append(parent[leg[-1]][0])
                leg.reverse()
                legs[c].append((leg, key))
                owners.setdefault(key, []).append(c)
                on_leg.update(leg[1:])
                carried.add(key)
                carried.update(parent[x][1] for x in leg[1:])
            if not legs[c]:
                raise ContractViolation(f"level {level}: cluster of {c} has no boundary edge")

        for x in rest:
            if parent[x] is None:
                for key in loops[x]:
                    orient(x, key)
            elif x not in on_leg:
                orient(x, parent[x][1])
        for x in rest:
            for y, key in reduced[x]:
                if key not in carried and key not in orient.done:
                    orient(max(x, y), key)

        unsettled = [k for row in ports.values() for k in row if k not in orient.done and k not in carried]
        if unsettled:
            raise ContractViolation(f"level {level}: edges {unsettled[:5]} neither oriented nor contracted")

        nxt = self._contract(ports, legs, owners, parent)
        stats.update(loops=len(looped), far=len(far), centers=len(spider_centers), virtual=len(nxt))
        ledger.record_iteration(**stats)
        logger.debug("sinkless level {}: {}", level, stats)
        return nxt

    def _spread_centers(
        self,
        g: Graph,
        ledger: RoundLedger,
        reduced: dict[int, list[tuple[int, int]]],
        far: list[int],
        scale: int,
        level: int,
    ) -> list[int]:
        """Maximal subset of ``far`` with pairwise distance > 2r, by Linial MIS on the power graph."""
        if not far:
            return []
        r = self.r
        index = {x: i for i, x in enumerate(far)}
        edges = set()
        for x in far:
            for y in _bfs(reduced, [x], 2 * r):
                if y != x and y in index:
                    a, b = index[x], index[y]
                    edges.add((min(a, b), max(a, b)))
        power = Graph.from_edges(len(far), sorted(edges))
        outcome = linial_greedy_mis(power, n=g.n, ids=far)
        ledger.charge(outcome.rounds * 2 * r * scale, f"level {level} center selection")
        return sorted(far[i] for i in outcome.members)

    @staticmethod
    def _cluster(
        reduced: dict[int, list[tuple[int, int]]], centers: list[int]
    ) -> tuple[dict[int, int], dict[int, tuple[int, int] | None], dict[int, int]]:
        """Nearest center per node (ties to the smaller center id) with BFS-tree parents."""
        center: dict[int, int] = {c: c for c in centers}
        parent: dict[int, tuple[int, int] | None] = {c: None for c in centers}
        depth: dict[int, int] = {c: 0 for c in centers}
        frontier = list(centers)
        while frontier:
            nxt = []
            for x in sorted(frontier, key=lambda v: (center[v], v)):
                for y, key in sorted(reduced[x]):
                    if y not in center:
                        center[y] = center[x]
                        parent[y] = (x, key)
                        depth[y] = depth[x] + 1
                        nxt.append(y)
            frontier = nxt
        return center, parent, depth

    @staticmethod
    def _contract(
        ports: Ports,
        legs: dict[int, list[tuple[list[int], int]]],
        owners: dict[int, list[int]],
        parent: dict[int, tuple[int, int] | None],
    ) -> Ports:
        def outward(leg: list[int]) -> tuple[Hop, ...]:
            hops: list[Hop] = []
            for a, b in zip(leg, leg[1:]):
                hops.extend(ports[a][parent[b][1]].path)
            return tuple(hops)

        def inward(leg: list[int]) -> tuple[Hop, ...]:
            hops: list[Hop] = []
            for b in reversed(leg[1:]):
                hops.extend(ports[b][parent[b][1]].path)
            return tuple(hops)

        leg_of = {(c, key): leg for c, entries in legs.items() for leg, key in entries}
        nxt: Ports = {}
        for c, entries in legs.items():
            row: dict[int, Port] = {}
            for leg, key in entries:
                path = outward(leg) + ports[leg[-1]][key].path
                others = [o for o in owners[key] if o != c]
                if others:
                    (other,) = others
                    row[key] = Port(key, other, path + inward(leg_of[(other, key)]))
                else:
                    row[key] = Port(key, None, path)
            nxt[c] = row
        return nxt

    # ------------------------------------------------------------------
    # Finisher
    # ------------------------------------------------------------------

    def _finish(self, g: Graph, ledger: RoundLedger, ports: Ports, scale: int) -> None:
        """Orient each residual component toward its loops, or around one cycle.

        Stands in for a worst-case finisher; a component costs its diameter
        (at the current scale) in rounds.
        """
        orient = _Orienter(g, ledger, ports)
        multi = nx.MultiGraph()
        multi.add_nodes_from(ports)
        for x, row in ports.items():
            for p in row.values():
                if p.peer is not None and x < p.peer:
                    multi.add_edge(x, p.peer, key=p.key)

        base = ledger.round
        finish = base
        for comp in sorted(nx.connected_components(multi), key=min):
            simple = nx.Graph(multi.subgraph(comp))
            diameter = nx.diameter(simple) if len(comp) > 1 else 0
            when = base + max(diameter, 1) * scale
            finish = max(finish, when)

            sources = sorted(x for x in comp if any(p.peer is None for p in ports[x].values()))
            for x in sources:
                for p in ports[x].values():
                    if p.peer is None:
                        orient(x, p.key, at=when)
            if not sources:
                cycle = nx.find_cycle(multi.subgraph(comp), source=min(comp))
                for a, _b, key in cycle:
                    orient(a, key, at=when)
                sources = sorted({a for a, _b, _k in cycle})

            seen = set(sources)
            queue = deque(sources)
            while queue:
                x = queue.popleft()
                for p in sorted(ports[x].values(), key=lambda p: p.key):
                    y = p.peer
                    if y is not None and y not in seen:
                        seen.add(y)
                        orient(y, p.key, at=when)
                        queue.append(y)
            for x in sorted(comp):
                for p in ports[x].values():
                    orient.free(x, p, at=when)
        ledger.advance_to(finish)
        ledger.annotations["finisher_nodes"] = len(ports)
