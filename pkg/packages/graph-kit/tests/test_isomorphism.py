import pytest

from nodeavg_graph import (
    ConstructionInvariantError,
    Graph,
    InputError,
    IsoMapping,
    canonical_view_hash,
    find_isomorphism,
    find_treelike_pair,
    find_treelike_pairs,
    is_tree_like,
    radius_view,
    random_lift,
    verify_isomorphism,
)
from nodeavg_graph.isomorphism import _map, _surplus_indices


def test_depth_zero_maps_roots_only(base_k0_b6):
    v0, v1 = find_treelike_pair(base_k0_b6, 0, seed=1)
    m = find_isomorphism(base_k0_b6, 0, v0, v1)
    assert m.phi == {v0: v1}
    assert verify_isomorphism(base_k0_b6, 0, v0, v1, m)


def test_depth_one_mapping_covers_both_views(base_k1_b10):
    v0, v1 = find_treelike_pair(base_k1_b10, 1, seed=4)
    m = find_isomorphism(base_k1_b10, 1, v0, v1)
    assert len(m) == 23
    assert verify_isomorphism(base_k1_b10, 1, v0, v1, m)


def test_bucket_pairings_follow_size_relation(base_k1_b10):
    for v0, v1 in find_treelike_pairs(base_k1_b10, 1, seed=0, limit=5):
        m = find_isomorphism(base_k1_b10, 1, v0, v1)
        for p in m.pairings:
            assert p.same_position_and_history or p.both_internal
            diff = [a - b for a, b in zip(p.sizes_v, p.sizes_w)]
            assert sorted(d for d in diff if d) in ([], [-1, 1])


def test_lifted_pairs_verify_and_hash_equal(lift_k1_b10_q2):
    g = lift_k1_b10_q2
    pairs = find_treelike_pairs(g, 1, seed=11, limit=20)
    assert len(pairs) == 20
    for v0, v1 in pairs:
        m = find_isomorphism(g, 1, v0, v1)
        assert verify_isomorphism(g, 1, v0, v1, m)
        h0 = canonical_view_hash(radius_view(g.graph, v0, 1))
        h1 = canonical_view_hash(radius_view(g.graph, v1, 1))
        assert h0 == h1


@pytest.mark.slow
def test_twenty_pairs_on_a_fifty_fold_lift(base_k1_b10):
    g = random_lift(base_k1_b10, 50, seed=3)
    pairs = find_treelike_pairs(g, 1, seed=11, limit=20)
    assert len(pairs) == 20
    for v0, v1 in pairs:
        m = find_isomorphism(g, 1, v0, v1)
        assert verify_isomorphism(g, 1, v0, v1, m)
        assert canonical_view_hash(radius_view(g.graph, v0, 1)) == canonical_view_hash(radius_view(g.graph, v1, 1))


def test_tree_like_filter_drops_cyclic_views_at_depth_two(base_k0_b6):
    g = random_lift(base_k0_b6, 1000, seed=1)
    flags = [is_tree_like(g, v, 2) for v in g.members[0][:2000].tolist()]
    # a large lift unwinds most short cycles of the base, not all of them
    assert any(flags) and not all(flags)

    pairs = find_treelike_pairs(g, 2, seed=3, limit=10)
    assert len(pairs) == 10
    s0, s1 = set(g.members[0].tolist()), set(g.members[1].tolist())
    for v0, v1 in pairs:
        assert v0 in s0 and v1 in s1
        assert is_tree_like(g, v0, 2) and is_tree_like(g, v1, 2)


def test_mapping_is_deterministic(base_k1_b10):
    v0, v1 = find_treelike_pair(base_k1_b10, 1, seed=2)
    assert find_isomorphism(base_k1_b10, 1, v0, v1).phi == find_isomorphism(base_k1_b10, 1, v0, v1).phi


def test_find_isomorphism_checks_clusters(base_k0_b6):
    s0 = base_k0_b6.members[0]
    with pytest.raises(InputError):
        find_isomorphism(base_k0_b6, 0, int(s0[0]), int(s0[1]))


def test_find_isomorphism_requires_tree_like_views(base_k0_b6):
    v0, v1 = int(base_k0_b6.members[0][0]), int(base_k0_b6.members[1][0])
    with pytest.raises(InputError):
        find_isomorphism(base_k0_b6, 2, v0, v1)


def test_no_tree_like_pair_when_views_are_cyclic(base_k0_b6):
    # at radius 2 every S(c0) node sees its two S(c1) neighbors inside one clique
    assert find_treelike_pair(base_k0_b6, 2, seed=0) is None


def test_any_pair_qualifies_at_depth_zero(base_k0_b6):
    pairs = find_treelike_pairs(base_k0_b6, 0, seed=5, limit=100)
    assert len(pairs) == 12


# ----------------------------------------------------------------------
# verify_isomorphism on hand-built trees
# ----------------------------------------------------------------------


def _two_trees() -> Graph:
    # 0 -> {1, 2}, 1 -> {3, 4}, 2 -> {5}; the same tree again shifted by 6
    tree = [(0, 1), (0, 2), (1, 3), (1, 4), (2, 5)]
    return Graph.from_edges(12, tree + [(a + 6, b + 6) for a, b in tree])


def test_identity_on_single_vertex():
    m = IsoMapping(root_pair=(0, 0), k=0, phi={0: 0})
    assert verify_isomorphism(Graph.empty(1), 0, 0, 0, m)


def test_shifted_tree_mapping_verifies():
    g = _two_trees()
    m = IsoMapping(root_pair=(0, 6), k=2, phi={v: v + 6 for v in range(6)})
    assert verify_isomorphism(g, 2, 0, 6, m)


def test_swapping_dissimilar_children_fails():
    g = _two_trees()
    phi = {v: v + 6 for v in range(6)}
    phi[1], phi[2] = phi[2], phi[1]
    assert not verify_isomorphism(g, 2, 0, 6, IsoMapping(root_pair=(0, 6), k=2, phi=phi))


def test_partial_mapping_fails():
    g = _two_trees()
    phi = {v: v + 6 for v in range(5)}
    assert not verify_isomorphism(g, 2, 0, 6, IsoMapping(root_pair=(0, 6), k=2, phi=phi))


# ----------------------------------------------------------------------
# Map
# ----------------------------------------------------------------------


def test_map_patches_single_swapped_pair():
    phi: dict[int, int] = {}
    n_v = [[1, 2], [3], []]
    n_w = [[11], [13, 14], []]
    _map(n_v, n_w, phi)
    assert phi == {1: 11, 3: 13, 2: 14}


def test_surplus_beyond_one_pair_is_rejected():
    assert _surplus_indices([1, 1], [1, 1]) is None
    with pytest.raises(ConstructionInvariantError):
        _surplus_indices([3, 1], [1, 1])
    with pytest.raises(ConstructionInvariantError):
        _surplus_indices([2, 1, 0], [1, 0, 1])
