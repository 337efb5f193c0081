"""Named and random graph generators backed by networkx."""

from __future__ import annotations

import networkx as nx
import numpy as np

from .errors import InputError
from .graph import Graph


def from_networkx(nxg: nx.Graph) -> Graph:
    """Convert a networkx graph, relabeling nodes to 0..n-1 in sorted order."""
    nodes = sorted(nxg.nodes())
    index = {v: i for i, v in enumerate(nodes)}
    edges = np.array([(index[a], index[b]) for a, b in nxg.edges()], dtype=np.int64).reshape(-1, 2)
    return Graph.from_edges(len(nodes), edges)


def to_networkx(g: Graph) -> nx.Graph:
    nxg = nx.Graph()
    nxg.add_nodes_from(range(g.n))
    nxg.add_edges_from(g.edges.tolist())
    return nxg


def path(n: int) -> Graph:
    return from_networkx(nx.path_graph(n))


def cycle(n: int) -> Graph:
    if n < 3:
        raise InputError(f"a cycle needs at least 3 nodes, got {n}")
    return from_networkx(nx.cycle_graph(n))


def complete(n: int) -> Graph:
    return from_networkx(nx.complete_graph(n))


def complete_bipartite(a: int, b: int) -> Graph:
    return from_networkx(nx.complete_bipartite_graph(a, b))


def star(leaves: int) -> Graph:
    """K_{1,leaves} with the center as node 0."""
    return from_networkx(nx.star_graph(leaves))


def gnp(n: int, p: float, seed: int) -> Graph:
    if not 0.0 <= p <= 1.0:
        raise InputError(f"edge probability must lie in [0, 1], got {p}")
    return from_networkx(nx.fast_gnp_random_graph(n, p, seed=seed))


def random_regular(n: int, d: int, seed: int) -> Graph:
    if d < 0 or d >= n or (n * d) % 2:
        raise InputError(f"no {d}-regular graph on {n} nodes")
    return from_networkx(nx.random_regular_graph(d, n, seed=seed))
