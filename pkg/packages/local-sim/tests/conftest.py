import pytest

from nodeavg_graph import Graph, build_base_graph, build_skeleton
from nodeavg_graph import generators as gen


def gadget_tree(depth: int = 8) -> Graph:
    """Root with 3 children, binary below, every leaf tied to two nodes of its own K4.

    Minimum degree 3 and no short cycle in the tree part, so the sinkless
    orientation has to cluster and contract at least once.
    """
    edges: list[tuple[int, int]] = []
    frontier, next_id = [0], 1
    for _ in range(depth):
        nxt = []
        for x in frontier:
            for _ in range(3 if x == 0 else 2):
                edges.append((x, next_id))
                nxt.append(next_id)
                next_id += 1
        frontier = nxt
    for leaf in frontier:
        k4 = list(range(next_id, next_id + 4))
        next_id += 4
        edges += [(a, b) for i, a in enumerate(k4) for b in k4[i + 1 :]]
        edges += [(leaf, k4[0]), (leaf, k4[1])]
    return Graph.from_edges(next_id, edges)


SMALL_GRAPHS = {
    "p5": lambda: gen.path(5),
    "c12": lambda: gen.cycle(12),
    "k4": lambda: gen.complete(4),
    "k33": lambda: gen.complete_bipartite(3, 3),
    "gnp80": lambda: gen.gnp(80, 0.08, seed=1),
    "reg60": lambda: gen.random_regular(60, 3, seed=2),
    "ct-k0-b6": lambda: build_base_graph(build_skeleton(0, 6)).graph,
}


@pytest.fixture(params=sorted(SMALL_GRAPHS))
def small_graph(request):
    return SMALL_GRAPHS[request.param]()


@pytest.fixture
def path3():
    return gen.path(3)


@pytest.fixture(scope="session")
def gadget():
    return gadget_tree(8)
