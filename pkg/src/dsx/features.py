"""Feature extraction and hashing of parse trees into fixed-size vectors.

Each side (old/new) of a change or query contributes two feature sets:
node features (one per tree node) and triangles (a node plus its
descendants down to a configurable depth, default 1).  Features are hashed
with FNV-1a 64 summed over their part strings and scattered into four
equal vector segments: [old-node, new-node, old-triangle, new-triangle].
"""

from __future__ import annotations

import re
from dataclasses import dataclass

import numpy as np

from dsx import kernels
from dsx.grammar import Query, Snippet, TreeNode, is_empty_side, iter_nodes, parse_snippet

NODE = "node"
TRIANGLE = "triangle"

DEFAULT_VECTOR_LENGTH = 1000

_MASK64 = 0xFFFFFFFFFFFFFFFF

# Query-only token spellings; they never occur in code-mode trees, so
# dropping features by part text is exact.
_ABSTRACT_PART_RE = re.compile(r"(?:EXPR|binOP|unOP|ID|LT|OP)(?:<\d+>)?$|<\.\.\.>$|_$")


@dataclass(frozen=True)
class Feature:
    kind: str  # node | triangle
    side: str  # old | new
    parts: tuple[str, ...]


@dataclass(frozen=True)
class FeatureVector:
    """Binary vector of length l, bit-packed LSB-first into bytes."""

    l: int
    packed: bytes

    @staticmethod
    def from_indices(l: int, indices) -> "FeatureVector":
        bits = np.zeros(l, dtype=np.uint8)
        for i in indices:
            bits[i] = 1
        return FeatureVector(l, np.packbits(bits, bitorder="little").tobytes())

    def indices(self) -> list[int]:
        arr = np.frombuffer(self.packed, dtype=np.uint8)
        return np.unpackbits(arr, bitorder="little")[: self.l].nonzero()[0].tolist()

    def popcount(self) -> int:
        return len(self.indices())


def validate_vector_length(l: int) -> None:
    if l < 4 or l % 4 != 0:
        raise ValueError(f"vector length must be a positive multiple of 4, got {l}")


def extract_features(tree: TreeNode, side: str, depth: int = 1) -> set[Feature]:
    """All node and triangle features of one side's tree.

    A side with no tokens (empty marker or empty code side) contributes no
    features.  Leaves yield no triangles.
    """
    if depth < 1:
        raise ValueError("triangle depth must be >= 1")
    if is_empty_side(tree):
        return set()
    feats: set[Feature] = set()
    for node in iter_nodes(tree):
        feats.add(Feature(NODE, side, (node.label,)))
        if node.children:
            feats.add(Feature(TRIANGLE, side, _triangle_parts(node, depth)))
    return feats


def _triangle_parts(node: TreeNode, depth: int) -> tuple[str, ...]:
    parts = [node.label]

    def descend(n: TreeNode, levels_left: int) -> None:
        for child in n.children:
            parts.append(child.label)
            if levels_left > 1:
                descend(child, levels_left - 1)

    descend(node, depth)
    return tuple(parts)


_part_hash_cache: dict[str, int] = {}


def _part_hash(part: str) -> int:
    h = _part_hash_cache.get(part)
    if h is None:
        h = kernels.fnv1a64(part.encode("utf-8"))
        _part_hash_cache[part] = h
    return h


def hash_into_segment(feature: Feature, segment_length: int) -> int:
    """Hash a feature into [0, segment_length): FNV-1a 64 of each part,
    summed with wraparound, modulo the segment length.  Commutative in the
    parts by construction."""
    if segment_length <= 0:
        raise ValueError("segment_length must be positive")
    h = 0
    for part in feature.parts:
        h = (h + _part_hash(part)) & _MASK64
    return h % segment_length


def _is_abstract(feature: Feature) -> bool:
    return any(_ABSTRACT_PART_RE.fullmatch(p) for p in feature.parts)


def _vector_from_trees(
    old_tree: TreeNode,
    new_tree: TreeNode,
    l: int,
    depth: int,
    drop_abstract: bool,
) -> FeatureVector:
    validate_vector_length(l)
    seg_len = l // 4
    indices: set[int] = set()
    for side, tree, node_seg, tri_seg in (
        ("old", old_tree, 0, 2),
        ("new", new_tree, 1, 3),
    ):
        for feat in extract_features(tree, side, depth):
            if drop_abstract and _is_abstract(feat):
                continue
            seg_index = node_seg if feat.kind == NODE else tri_seg
            indices.add(seg_index * seg_len + hash_into_segment(feat, seg_len))
    return FeatureVector.from_indices(l, indices)


def featurize_trees(
    old_tree: TreeNode,
    new_tree: TreeNode,
    l: int = DEFAULT_VECTOR_LENGTH,
    depth: int = 1,
) -> FeatureVector:
    """Featurize a change whose sides are already parsed."""
    return _vector_from_trees(old_tree, new_tree, l, depth, drop_abstract=False)


def featurize_change(change, l: int = DEFAULT_VECTOR_LENGTH, depth: int = 1) -> FeatureVector:
    """Featurize a code change (an object with old_lines/new_lines)."""
    old_tree = parse_snippet(Snippet.code(change.old_lines))
    new_tree = parse_snippet(Snippet.code(change.new_lines))
    return featurize_trees(old_tree, new_tree, l, depth)


def featurize_query(query: Query, l: int = DEFAULT_VECTOR_LENGTH, depth: int = 1) -> FeatureVector:
    """Featurize a query; features touching a placeholder, wildcard, or
    empty marker are dropped so query bits stay a subset of the bits of
    any matching change (modulo hash collisions)."""
    old_tree, new_tree = query.parse()
    return _vector_from_trees(old_tree, new_tree, l, depth, drop_abstract=True)
