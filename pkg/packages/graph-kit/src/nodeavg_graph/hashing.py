"""Order-independent 64-bit digests of labeled rooted views."""

from __future__ import annotations

import hashlib

from .errors import ContractViolation
from .views import ViewTree

DIGEST_BYTES = 8


def _mix(*parts: bytes) -> bytes:
    h = hashlib.blake2b(digest_size=DIGEST_BYTES)
    for p in parts:
        h.update(len(p).to_bytes(4, "little"))
        h.update(p)
    return h.digest()


def _label_bytes(view: ViewTree, a: int, b: int) -> bytes:
    label = view.labels.get((a, b))
    if label is None:
        return b"-"
    exp, is_self = label
    return f"{exp}:{int(is_self)}".encode()


def canonical_view_hash(view: ViewTree) -> str:
    """Hex digest of ``view`` that ignores node ids.

    A vertex digest combines the labels of the edge to its parent (both
    directions) with the sorted multiset of its children's digests.
    """
    if not view.is_tree:
        raise ContractViolation(
            f"view of node {view.root} at depth {view.depth} is not a tree "
            f"({view.vertex_count} vertices, {len(view.edges)} edges)"
        )
    kids = view.children()
    order = sorted(view.dist, key=lambda v: (-view.dist[v], v))
    digest: dict[int, bytes] = {}
    for v in order:
        child_digests = b"".join(sorted(digest[c] for c in kids[v]))
        if v == view.root:
            edge_part = b"root"
        else:
            p = view.parent[v]
            edge_part = _label_bytes(view, p, v) + b"/" + _label_bytes(view, v, p)
        digest[v] = _mix(edge_part, child_digests)
    return digest[view.root].hex()
