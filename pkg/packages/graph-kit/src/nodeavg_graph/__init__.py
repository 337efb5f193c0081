"""nodeavg graph kit -- graphs, views, and the cluster-tree lower-bound family.

Provides the immutable CSR graph used by the simulator, radius-k views with
canonical hashing, short-cycle search, CT_k skeletons with their base graphs
and random lifts, exact family validation, and the view isomorphism walk.
"""

from .construct import ClusterGraph, build_base_graph, fiber_check, lift_graph, random_lift
from .cycles import (
    cluster_cycle_reference,
    cycle_stats,
    lift_cycle_bound,
    min_cycle_through_edge,
    node_in_short_cycle,
    preferred_orientation,
)
from .errors import (
    ConstructionInvariantError,
    ContractViolation,
    InputError,
    NodeAvgError,
    RounderContractError,
    SimulationTimeout,
)
from .family import validate_family
from .graph import Graph, ball, bfs_distances
from .hashing import canonical_view_hash
from .independence import Budget, alpha_components, clique_pair_components, independence_number_exact
from .isomorphism import (
    BucketPairing,
    IsoMapping,
    find_isomorphism,
    find_treelike_pair,
    find_treelike_pairs,
    verify_isomorphism,
)
from .reports import AlphaSample, ValidationReport, Violation
from .skeleton import FIRST_CHILD, ROOT, ClusterTreeSkeleton, NodeKind, SkeletonEdge, SkeletonNode, build_skeleton
from .views import ViewTree, is_tree_like, radius_view

__all__ = [
    "FIRST_CHILD",
    "ROOT",
    "AlphaSample",
    "BucketPairing",
    "Budget",
    "ClusterGraph",
    "ClusterTreeSkeleton",
    "ConstructionInvariantError",
    "ContractViolation",
    "Graph",
    "InputError",
    "IsoMapping",
    "NodeAvgError",
    "NodeKind",
    "RounderContractError",
    "SimulationTimeout",
    "SkeletonEdge",
    "SkeletonNode",
    "ValidationReport",
    "ViewTree",
    "Violation",
    "alpha_components",
    "ball",
    "bfs_distances",
    "build_base_graph",
    "build_skeleton",
    "canonical_view_hash",
    "clique_pair_components",
    "cluster_cycle_reference",
    "cycle_stats",
    "fiber_check",
    "find_isomorphism",
    "find_treelike_pair",
    "find_treelike_pairs",
    "independence_number_exact",
    "is_tree_like",
    "lift_cycle_bound",
    "lift_graph",
    "min_cycle_through_edge",
    "node_in_short_cycle",
    "preferred_orientation",
    "radius_view",
    "random_lift",
    "validate_family",
    "verify_isomorphism",
]
