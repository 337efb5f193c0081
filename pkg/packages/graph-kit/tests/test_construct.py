import numpy as np
import pytest

from nodeavg_graph import (
    ROOT,
    ClusterGraph,
    Graph,
    InputError,
    NodeKind,
    build_base_graph,
    build_skeleton,
    fiber_check,
    lift_graph,
    random_lift,
    validate_family,
)
from nodeavg_graph import generators as gen
from nodeavg_graph.construct import label_slots


# ----------------------------------------------------------------------
# Skeleton
# ----------------------------------------------------------------------


def test_ct0_has_two_nodes_and_base_edges():
    ct = build_skeleton(0, 6)
    assert ct.size == 2
    triples = {(e.source, e.target, e.coefficient, e.exponent) for e in ct.edges}
    assert triples == {(0, 1, 2, 0), (1, 0, 1, 1), (1, 1, 1, 1)}


def test_ct1_layout():
    ct = build_skeleton(1, 10)
    assert ct.size == 4
    assert [n.kind for n in ct.nodes] == [NodeKind.INTERNAL, NodeKind.INTERNAL, NodeKind.LEAF, NodeKind.LEAF]
    assert (ct.nodes[2].parent, ct.nodes[2].psi) == (0, 2)
    assert (ct.nodes[3].parent, ct.nodes[3].psi) == (1, 1)


def test_ct2_has_ten_nodes():
    assert build_skeleton(2, 14).size == 10


@pytest.mark.parametrize("k", [0, 1, 2, 3])
def test_skeleton_structure(k):
    ct = build_skeleton(k, 20)
    loops = {e.source: e for e in ct.edges if e.source == e.target}
    assert ROOT not in loops
    for node in ct.nodes:
        if node.id == ROOT:
            assert node.parent is None
            child_exps = sorted(ct.edge_label(ROOT, c).exponent for c in ct.children(ROOT))
            assert child_exps == list(range(k + 1))
            continue
        assert loops[node.id].exponent == node.psi
        down = ct.edge_label(node.parent, node.id)
        up = ct.edge_label(node.id, node.parent)
        assert down.coefficient == 2 and up.coefficient == 1
        assert up.exponent == down.exponent + 1 == node.psi
        if node.kind is NodeKind.INTERNAL:
            exps = sorted(ct.edge_label(node.id, c).exponent for c in ct.children(node.id))
            assert exps == [j for j in range(k + 1) if j != node.psi]
        else:
            assert ct.children(node.id) == []


@pytest.mark.parametrize(("k", "beta"), [(0, 5), (0, 2), (-1, 6)])
def test_skeleton_rejects_bad_parameters(k, beta):
    with pytest.raises(InputError):
        build_skeleton(k, beta)


# ----------------------------------------------------------------------
# Base graphs
# ----------------------------------------------------------------------


def test_base_k0_b6_counts(base_k0_b6):
    g = base_k0_b6
    assert g.n == 48
    assert [len(g.members[c]) for c in range(2)] == [36, 12]
    s0, s1 = g.members[0], g.members[1]
    in_s1 = np.isin(g.graph.indices, s1)
    per_node = np.add.reduceat(in_s1.astype(int), g.graph.indptr[:-1])
    assert set(per_node[s0].tolist()) == {2}
    for v in s1.tolist():
        nbrs = g.graph.neighbors(v)
        assert int(np.isin(nbrs, s0).sum()) == 6
        assert int(np.isin(nbrs, s1).sum()) == 6
    assert not np.any(np.isin(g.graph.edges, s0).all(axis=1))


def test_base_k1_b10_counts(base_k1_b10):
    g = base_k1_b10
    assert [len(g.members[c]) for c in range(4)] == [5000, 1000, 1000, 200]
    assert g.n == 7200
    assert g.graph.max_degree == 200
    assert set(g.graph.degrees[g.members[0]].tolist()) == {22}
    assert set(g.graph.degrees[g.members[2]].tolist()) == {200}


@pytest.mark.parametrize(("k", "beta"), [(0, 6), (0, 10), (1, 10)])
def test_base_graph_is_family_member(k, beta):
    ct = build_skeleton(k, beta)
    g = build_base_graph(ct)
    report = validate_family(g)
    assert report.ok, report.violations[:3]
    assert g.n == ct.total_size()
    assert g.n == sum(2 * beta ** (k + 1) * (beta // 2) ** (k + 1 - node.depth) for node in ct.nodes)
    assert g.graph.max_degree == 2 * beta ** (k + 1)


def test_paired_skeleton_edges_double_count(base_k1_b10):
    ct = base_k1_b10.skeleton
    for e in ct.edges:
        back = ct.edge_label(e.target, e.source)
        if e.source != e.target:
            assert ct.cluster_size(e.source) * e.multiplicity(ct.beta) == ct.cluster_size(e.target) * back.multiplicity(ct.beta)


def test_base_graph_rejects_large_k():
    with pytest.raises(InputError):
        build_base_graph(build_skeleton(1, 8))


def test_s0_is_independent(base_k1_b10):
    g = base_k1_b10
    c = g.cluster_of[g.graph.edges]
    assert not np.any((c[:, 0] == ROOT) & (c[:, 1] == ROOT))


def test_labels_are_directional(base_k0_b6):
    g = base_k0_b6
    u = int(g.members[0][0])
    v = int(g.graph.neighbors(u)[0])
    assert g.label(u, v) == (0, False)
    assert g.label(v, u) == (1, False)
    w = next(x for x in g.graph.neighbors(v).tolist() if g.cluster_of[x] == 1)
    assert g.label(v, w) == (1, True)


# ----------------------------------------------------------------------
# Family validation
# ----------------------------------------------------------------------


def _without_edge(g: ClusterGraph, eid: int) -> ClusterGraph:
    keep = np.delete(g.graph.edges, eid, axis=0)
    graph = Graph.from_edges(g.n, keep)
    slot_exp, slot_self = label_slots(graph, g.cluster_of, g.skeleton)
    return ClusterGraph(
        graph=graph,
        cluster_of=g.cluster_of,
        slot_exp=slot_exp,
        slot_self=slot_self,
        skeleton=g.skeleton,
        lift_order=g.lift_order,
        base_of=g.base_of,
    )


def test_deleted_edge_gives_two_count_violations(base_k0_b6):
    broken = _without_edge(base_k0_b6, 0)
    report = validate_family(broken)
    assert report.kinds() == {"neighbor_count": 2}
    assert sorted(n for v in report.violations for n in v.nodes) == sorted(base_k0_b6.graph.edges[0].tolist())


def test_extra_edge_is_reported(base_k0_b6):
    g = base_k0_b6
    s0 = g.members[0]
    edges = np.vstack([g.graph.edges, [[int(s0[0]), int(s0[1])]]])
    graph = Graph.from_edges(g.n, edges)
    slot_exp, slot_self = label_slots(graph, g.cluster_of, g.skeleton)
    bad = ClusterGraph(graph, g.cluster_of, slot_exp, slot_self, g.skeleton, 1, g.base_of)
    report = validate_family(bad)
    assert report.kinds().get("extra_edge") == 1


def test_tampered_label_is_reported(base_k0_b6):
    g = base_k0_b6
    slot_exp = g.slot_exp.copy()
    slot_exp[0] = 1 - slot_exp[0]
    bad = ClusterGraph(g.graph, g.cluster_of, slot_exp, g.slot_self, g.skeleton, 1, g.base_of)
    report = validate_family(bad)
    assert report.kinds()["label"] == 1
    assert report.kinds()["label_count"] == 1


# ----------------------------------------------------------------------
# Lifts
# ----------------------------------------------------------------------


def test_order_one_lift_is_the_base(base_k0_b6):
    lifted = random_lift(base_k0_b6, 1, seed=9)
    assert validate_family(lifted).ok
    assert fiber_check(base_k0_b6.graph, lifted.graph, 1)
    assert np.array_equal(lifted.graph.edges, base_k0_b6.graph.edges)


@pytest.mark.parametrize("q", [5, 50])
def test_lifts_stay_in_family(base_k0_b6, q):
    lifted = random_lift(base_k0_b6, q, seed=7)
    assert lifted.n == 48 * q
    assert lifted.lift_order == q
    assert validate_family(lifted).ok
    assert fiber_check(base_k0_b6.graph, lifted.graph, q)


def test_lift_preserves_label_multisets(base_k0_b6):
    lifted = random_lift(base_k0_b6, 4, seed=1)
    for x in range(0, lifted.n, 11):
        v = int(lifted.base_of[x])
        base_labels = sorted(base_k0_b6.label(v, u) for u in base_k0_b6.graph.neighbors(v).tolist())
        lift_labels = sorted(lifted.label(x, y) for y in lifted.graph.neighbors(x).tolist())
        assert base_labels == lift_labels


def test_lift_is_reproducible(base_k0_b6):
    a = random_lift(base_k0_b6, 5, seed=21)
    b = random_lift(base_k0_b6, 5, seed=21)
    c = random_lift(base_k0_b6, 5, seed=22)
    assert np.array_equal(a.graph.edges, b.graph.edges)
    assert not np.array_equal(a.graph.edges, c.graph.edges)


def test_k4_lift_is_cubic():
    lifted = lift_graph(gen.complete(4), 10, seed=0)
    assert lifted.n == 40
    assert set(lifted.degrees.tolist()) == {3}
    assert fiber_check(gen.complete(4), lifted, 10)


def test_fiber_check_detects_broken_matching():
    base = gen.complete(4)
    lifted = lift_graph(base, 3, seed=0)
    assert fiber_check(base, lifted, 3)
    assert not fiber_check(base, gen.cycle(12), 3)
    # node 0 joined to two copies of base node 1
    edges = lifted.edges.tolist()
    within = [e for e in edges if e[0] // 3 != 0 and e[1] // 3 != 0]
    rewired = within + [[0, 3], [0, 4], [0, 9], [1, 5], [1, 6], [1, 10], [2, 7], [2, 8], [2, 11]]
    assert not fiber_check(base, Graph.from_edges(12, rewired), 3)


def test_lift_rejects_zero_order(base_k0_b6):
    with pytest.raises(InputError):
        random_lift(base_k0_b6, 0, seed=1)
