import math

import pytest

from nodeavg_graph import build_base_graph, build_skeleton
from nodeavg_graph import generators as gen
from nodeavg_sim import good_edges_matching, good_nodes_matching, good_nodes_ruling


def _corpus():
    for seed in range(10):
        for c in (2, 10):
            n = 200 + 50 * seed
            yield gen.gnp(n, c / n, seed=seed)
    yield build_base_graph(build_skeleton(0, 6)).graph
    yield build_base_graph(build_skeleton(0, 10)).graph


def test_star_center_and_leaves_are_good():
    g = gen.star(3)
    # every 2-ball is the whole star: 1/4 + 3 * 1/2 = 7/4
    assert good_nodes_ruling(g).tolist() == [True] * 4


def test_isolated_node_is_good():
    assert good_nodes_ruling(gen.path(1)).tolist() == [True]


@pytest.mark.parametrize("index", range(22))
def test_at_least_half_the_nodes_are_good(index):
    g = list(_corpus())[index]
    assert int(good_nodes_ruling(g).sum()) >= math.ceil(g.n / 2)


@pytest.mark.parametrize("index", range(22))
def test_at_least_half_the_edges_are_good(index):
    g = list(_corpus())[index]
    assert int(good_edges_matching(g).sum()) >= math.ceil(g.m / 2)


def test_matching_good_nodes_on_a_star():
    g = gen.star(4)
    # leaves see only the heavier center
    assert good_nodes_matching(g).tolist() == [True, False, False, False, False]
    assert good_edges_matching(g).all()


@pytest.mark.slow
def test_good_node_and_edge_counts_on_larger_samples():
    for seed in range(100):
        n = 500 + 15 * seed
        for c in (2, 10):
            g = gen.gnp(n, c / n, seed=seed)
            assert int(good_nodes_ruling(g).sum()) >= math.ceil(g.n / 2)
            assert int(good_edges_matching(g).sum()) >= math.ceil(g.m / 2)
