"""Line-oriented graph files.

    graph v1
    nodes <n>
    edges <m>
    lift <q>                                  (cluster graphs only)
    skeleton <k> <beta>                       (cluster graphs only)
    node <id> <internal|leaf> <parent|-> <psi|-> <depth>
    arc <source> <target> <coefficient> <exponent>
    end
    e <u> <v> [<exp> <self 0|1>]
    cluster <node> <skeleton-id>

Edges are listed once with ``u < v`` in lexicographic order; the label is the
one seen from ``u``. Labels are recomputed from the cluster map on load and a
file whose labels disagree is rejected.
"""

from __future__ import annotations

from collections.abc import Iterator
from pathlib import Path

import numpy as np
from loguru import logger

from nodeavg_graph import (
    ClusterGraph,
    ClusterTreeSkeleton,
    Graph,
    InputError,
    NodeKind,
    SkeletonEdge,
    SkeletonNode,
)
from nodeavg_graph.construct import label_slots
from nodeavg_graph.graph import readonly

HEADER = "graph v1"
AnyGraph = Graph | ClusterGraph


def plain(g: AnyGraph) -> Graph:
    return g.graph if isinstance(g, ClusterGraph) else g


# ----------------------------------------------------------------------
# Writing
# ----------------------------------------------------------------------


def _opt(x: int | None) -> str:
    return "-" if x is None else str(x)


def _lines(g: AnyGraph) -> Iterator[str]:
    graph = plain(g)
    yield HEADER
    yield f"nodes {graph.n}"
    yield f"edges {graph.m}"
    if not isinstance(g, ClusterGraph):
        for u, v in graph.edges.tolist():
            yield f"e {u} {v}"
        return

    sk = g.skeleton
    yield f"lift {g.lift_order}"
    yield f"skeleton {sk.k} {sk.beta}"
    for node in sk.nodes:
        yield f"node {node.id} {node.kind.value} {_opt(node.parent)} {_opt(node.psi)} {node.depth}"
    for arc in sk.edges:
        yield f"arc {arc.source} {arc.target} {arc.coefficient} {arc.exponent}"
    yield "end"
    forward = graph.src < graph.indices
    for (u, v), exp, own in zip(graph.edges.tolist(), g.slot_exp[forward].tolist(), g.slot_self[forward].tolist()):
        yield f"e {u} {v} {exp} {int(own)}"
    for v, c in enumerate(g.cluster_of.tolist()):
        yield f"cluster {v} {c}"


def dumps(g: AnyGraph) -> str:
    return "\n".join(_lines(g)) + "\n"


def save(g: AnyGraph, path: Path) -> None:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("w", encoding="utf-8", newline="") as f:
        for line in _lines(g):
            f.write(line)
            f.write("\n")
    logger.info("wrote {} (n={}, m={})", path, plain(g).n, plain(g).m)


# ----------------------------------------------------------------------
# Reading
# ----------------------------------------------------------------------


class _Reader:
    def __init__(self, text: str, source: str) -> None:
        self.source = source
        self.rows = [(no, line.split()) for no, line in enumerate(text.splitlines(), 1) if line.strip()]
        self.pos = 0

    def fail(self, no: int, message: str) -> InputError:
        return InputError(f"{self.source}:{no}: {message}")

    def peek(self) -> str | None:
        return self.rows[self.pos][1][0] if self.pos < len(self.rows) else None

    def take(self, keyword: str, arity: int | tuple[int, ...]) -> tuple[int, list[str]]:
        if self.pos >= len(self.rows):
            raise InputError(f"{self.source}: unexpected end of file, expected '{keyword}'")
        no, parts = self.rows[self.pos]
        if parts[0] != keyword:
            raise self.fail(no, f"expected '{keyword}', got '{parts[0]}'")
        allowed = (arity,) if isinstance(arity, int) else arity
        if len(parts) - 1 not in allowed:
            raise self.fail(no, f"'{keyword}' takes {' or '.join(map(str, allowed))} fields, got {len(parts) - 1}")
        self.pos += 1
        return no, parts[1:]

    def ints(self, no: int, fields: list[str]) -> list[int]:
        try:
            return [int(x) for x in fields]
        except ValueError as exc:
            raise self.fail(no, f"not an integer: {exc}") from None


def _optional(reader: _Reader, no: int, field: str) -> int | None:
    return None if field == "-" else reader.ints(no, [field])[0]


def _read_skeleton(reader: _Reader) -> ClusterTreeSkeleton:
    no, fields = reader.take("skeleton", 2)
    k, beta = reader.ints(no, fields)
    nodes: list[SkeletonNode] = []
    arcs: list[SkeletonEdge] = []
    while reader.peek() == "node":
        no, (nid, kind, parent, psi, depth) = reader.take("node", 5)
        try:
            node_kind = NodeKind(kind)
        except ValueError:
            raise reader.fail(no, f"unknown node kind '{kind}'") from None
        nid_i, depth_i = reader.ints(no, [nid, depth])
        if nid_i != len(nodes):
            raise reader.fail(no, f"skeleton node ids must be consecutive, got {nid_i}")
        nodes.append(SkeletonNode(nid_i, node_kind, _optional(reader, no, parent), _optional(reader, no, psi), depth_i))
    while reader.peek() == "arc":
        no, fields = reader.take("arc", 4)
        source, target, coefficient, exponent = reader.ints(no, fields)
        if not (0 <= source < len(nodes) and 0 <= target < len(nodes)):
            raise reader.fail(no, f"arc {source}->{target} names an unknown skeleton node")
        arcs.append(SkeletonEdge(source, target, coefficient, exponent))
    reader.take("end", 0)
    return ClusterTreeSkeleton(k=k, beta=beta, nodes=tuple(nodes), edges=tuple(arcs))


def loads(text: str, source: str = "<string>") -> AnyGraph:
    """Parse a v1 graph file; raises InputError naming the offending line."""
    reader = _Reader(text, source)
    if not reader.rows or reader.rows[0][1] != HEADER.split():
        raise InputError(f"{source}: missing '{HEADER}' header")
    reader.pos = 1
    no, fields = reader.take("nodes", 1)
    (n,) = reader.ints(no, fields)
    no, fields = reader.take("edges", 1)
    (m,) = reader.ints(no, fields)
    if n < 0 or m < 0:
        raise reader.fail(no, "counts must be non-negative")

    lift = None
    skeleton = None
    if reader.peek() == "lift":
        no, fields = reader.take("lift", 1)
        (lift,) = reader.ints(no, fields)
        if lift < 1:
            raise reader.fail(no, f"lift order must be >= 1, got {lift}")
        skeleton = _read_skeleton(reader)

    edges = np.zeros((m, 2), dtype=np.int64)
    labels = np.zeros((m, 2), dtype=np.int64)
    for i in range(m):
        no, fields = reader.take("e", (2, 4))
        values = reader.ints(no, fields)
        if (len(values) == 4) != (skeleton is not None):
            raise reader.fail(no, "edge labels must be present exactly for cluster graphs")
        edges[i] = values[:2]
        if len(values) == 4:
            labels[i] = values[2:]
    graph = Graph.from_edges(n, edges)
    if graph.m != m:
        raise InputError(f"{source}: header announces {m} edges, found {graph.m}")
    if not np.array_equal(graph.edges, edges):
        raise InputError(f"{source}: edges must be listed as u < v in lexicographic order")

    if skeleton is None:
        if reader.peek() is not None:
            raise reader.fail(reader.rows[reader.pos][0], f"unexpected '{reader.peek()}'")
        return graph

    cluster_of = np.full(n, -1, dtype=np.int64)
    for _ in range(n):
        no, fields = reader.take("cluster", 2)
        v, c = reader.ints(no, fields)
        if not (0 <= v < n and 0 <= c < skeleton.size) or cluster_of[v] >= 0:
            raise reader.fail(no, f"bad cluster line for node {v}")
        cluster_of[v] = c
    if reader.peek() is not None:
        raise reader.fail(reader.rows[reader.pos][0], f"unexpected '{reader.peek()}'")

    slot_exp, slot_self = label_slots(graph, cluster_of, skeleton)
    forward = graph.src < graph.indices
    if m and not (np.array_equal(slot_exp[forward], labels[:, 0]) and np.array_equal(slot_self[forward], labels[:, 1] == 1)):
        bad = int(np.argmax((slot_exp[forward] != labels[:, 0]) | (slot_self[forward] != (labels[:, 1] == 1))))
        raise InputError(f"{source}: label of edge {edges[bad].tolist()} disagrees with the cluster map")
    if n % lift:
        raise InputError(f"{source}: {n} nodes is not a multiple of the lift order {lift}")
    return ClusterGraph(
        graph=graph,
        cluster_of=readonly(cluster_of),
        slot_exp=slot_exp,
        slot_self=slot_self,
        skeleton=skeleton,
        lift_order=lift,
        base_of=readonly(np.arange(n, dtype=np.int64) // lift),
    )


def load(path: Path) -> AnyGraph:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None
    g = loads(text, str(path))
    logger.debug("loaded {} (n={}, m={})", path, plain(g).n, plain(g).m)
    return g
