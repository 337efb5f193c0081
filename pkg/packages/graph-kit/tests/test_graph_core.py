from fractions import Fraction

import networkx as nx
import numpy as np
import pytest

from nodeavg_graph import (
    ContractViolation,
    Graph,
    InputError,
    ball,
    canonical_view_hash,
    cluster_cycle_reference,
    cycle_stats,
    is_tree_like,
    lift_cycle_bound,
    min_cycle_through_edge,
    node_in_short_cycle,
    preferred_orientation,
    radius_view,
)
from nodeavg_graph import generators as gen


# ----------------------------------------------------------------------
# Graph
# ----------------------------------------------------------------------


def test_from_edges_builds_symmetric_sorted_adjacency():
    g = Graph.from_edges(4, [(2, 0), (0, 1), (3, 2)])
    assert g.n == 4
    assert g.m == 3
    assert g.edges.tolist() == [[0, 1], [0, 2], [2, 3]]
    assert g.neighbors(2).tolist() == [0, 3]
    assert g.degrees.tolist() == [2, 1, 2, 1]
    assert g.max_degree == 2 and g.min_degree == 1
    for u in range(g.n):
        for v in g.neighbors(u).tolist():
            assert g.has_edge(v, u)
    assert g.edge_id(3, 2) == 2
    assert g.port_of(2, 1) == -1


def test_reverse_slots_point_back():
    g = gen.complete(5)
    src = g.src
    assert np.array_equal(src[g.reverse], g.indices)
    assert np.array_equal(g.edge_ids[g.reverse], g.edge_ids)


@pytest.mark.parametrize(
    "edges",
    [[(0, 0)], [(0, 1), (1, 0)], [(0, 5)], [(-1, 2)]],
)
def test_from_edges_rejects_non_simple_input(edges):
    with pytest.raises(InputError):
        Graph.from_edges(3, edges)


def test_subgraph_maps_back_to_parent_ids():
    g = gen.cycle(6)
    sub, keep = g.subgraph([5, 0, 1, 3])
    assert keep.tolist() == [0, 1, 3, 5]
    assert sorted(map(tuple, keep[sub.edges].tolist())) == [(0, 1), (0, 5)]


def test_ball_matches_networkx():
    g = gen.gnp(60, 0.08, seed=5)
    nxg = gen.to_networkx(g)
    for v in range(0, 60, 7):
        assert ball(g, v, 2) == nx.single_source_shortest_path_length(nxg, v, cutoff=2)


def test_check_node_rejects_unknown_ids():
    g = gen.path(3)
    with pytest.raises(InputError):
        radius_view(g, 3, 1)


# ----------------------------------------------------------------------
# Views
# ----------------------------------------------------------------------


def test_radius_zero_view_is_single_vertex():
    view = radius_view(gen.complete(4), 2, 0)
    assert view.vertex_count == 1
    assert view.edges == ()


def test_path_center_view_is_star():
    view = radius_view(gen.path(3), 1, 1)
    assert view.vertex_count == 3
    assert len(view.edges) == 2


def test_triangle_view_excludes_edge_between_frontier_nodes():
    view = radius_view(gen.complete(3), 0, 1)
    assert view.vertex_count == 3
    assert sorted(view.edges) == [(0, 1), (0, 2)]


@pytest.mark.parametrize(
    ("graph", "v", "k", "expected"),
    [
        (gen.complete(3), 0, 1, True),
        (gen.complete(3), 0, 2, False),
        (gen.cycle(6), 0, 2, True),
        (gen.cycle(6), 0, 3, False),
        (gen.star(4), 2, 5, True),
        (gen.path(7), 3, 4, True),
    ],
)
def test_is_tree_like_examples(graph, v, k, expected):
    assert is_tree_like(graph, v, k) is expected


def test_view_vertex_set_is_ball_and_tree_like_matches_edge_count():
    g = gen.gnp(80, 0.05, seed=11)
    for v in range(0, 80, 5):
        for k in range(4):
            view = radius_view(g, v, k)
            assert set(view.dist) == set(ball(g, v, k))
            assert is_tree_like(g, v, k) == (len(view.edges) == view.vertex_count - 1)


# ----------------------------------------------------------------------
# Cycles
# ----------------------------------------------------------------------


def test_node_in_short_cycle_examples():
    assert node_in_short_cycle(gen.complete(4), 1, 3) == 3
    assert node_in_short_cycle(gen.star(5), 0, 9) is None
    assert node_in_short_cycle(gen.cycle(5), 0, 4) is None
    assert node_in_short_cycle(gen.cycle(5), 0, 5) == 5


def test_node_in_short_cycle_rejects_small_bound():
    with pytest.raises(InputError):
        node_in_short_cycle(gen.complete(4), 0, 2)


def test_node_in_short_cycle_matches_networkx_per_node():
    g = gen.random_regular(40, 3, seed=2)
    nxg = gen.to_networkx(g)
    for v in range(g.n):
        best = None
        for u in list(nxg.neighbors(v)):
            nxg.remove_edge(u, v)
            if nx.has_path(nxg, u, v):
                length = nx.shortest_path_length(nxg, u, v) + 1
                best = length if best is None else min(best, length)
            nxg.add_edge(u, v)
        assert node_in_short_cycle(g, v, 40) == best


def test_cycle_stats_examples():
    assert cycle_stats(gen.path(6), 5) == 0
    assert cycle_stats(gen.complete(4), 3) == 1
    g = Graph.from_edges(5, [(0, 1), (1, 2), (2, 0), (2, 3), (3, 4)])
    assert cycle_stats(g, 3) == Fraction(3, 5)


def test_cycle_reference_lines():
    assert lift_cycle_bound(3, 4, 100) == Fraction(81, 100)
    assert cluster_cycle_reference(6) == Fraction(1, 6)
    with pytest.raises(InputError):
        lift_cycle_bound(3, 4, 0)


def test_min_cycle_through_edge_prefers_smallest_edge_keys():
    g = gen.complete(4)
    key = g.edge_id
    assert min_cycle_through_edge(g.adj, 0, 1, 3, key) == [0, 2, 1]
    c5 = gen.cycle(5)
    assert min_cycle_through_edge(c5.adj, 0, 1, 4, c5.edge_id) is None
    assert min_cycle_through_edge(c5.adj, 0, 1, 5, c5.edge_id) == [0, 4, 3, 2, 1]


def test_preferred_orientation_starts_from_minimum_edge():
    g = gen.complete(4)
    hops = preferred_orientation([0, 2, 1], g.edge_id)
    assert hops == [(0, 1), (1, 2), (2, 0)]


# ----------------------------------------------------------------------
# Hashing
# ----------------------------------------------------------------------


def test_single_vertex_views_hash_equal():
    a = radius_view(Graph.empty(1), 0, 0)
    b = radius_view(gen.complete(5), 3, 0)
    assert canonical_view_hash(a) == canonical_view_hash(b)


def test_star_degrees_distinguish_hashes():
    a = radius_view(gen.star(3), 0, 1)
    b = radius_view(gen.star(4), 0, 1)
    assert canonical_view_hash(a) != canonical_view_hash(b)


def test_hash_ignores_node_ids():
    a = radius_view(gen.star(3), 0, 1)
    b = radius_view(Graph.from_edges(4, [(3, 0), (3, 1), (3, 2)]), 3, 1)
    assert canonical_view_hash(a) == canonical_view_hash(b)


def test_hash_ignores_child_order():
    # root 0 with a leaf child and a child that has one grandchild
    a = Graph.from_edges(4, [(0, 1), (0, 2), (2, 3)])
    b = Graph.from_edges(4, [(0, 1), (0, 2), (1, 3)])
    assert canonical_view_hash(radius_view(a, 0, 2)) == canonical_view_hash(radius_view(b, 0, 2))


def test_hash_rejects_cyclic_view():
    with pytest.raises(ContractViolation):
        canonical_view_hash(radius_view(gen.complete(3), 0, 2))
