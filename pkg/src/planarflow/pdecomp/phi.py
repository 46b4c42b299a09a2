"""Φ paths through the decomposition tree and their short decompositions.

``Φ(H, x, y)`` joins two natural faces of ``H``: inside a leaf it is a
chain of natural faces; otherwise it stays in one child when both ends do,
or runs to the child's split face, crosses the split edge and continues in
the other child. An endpoint taken from ``Z(H)`` extends the path by the
split edge joining it to its sibling, which lies outside ``H``.
"""

from __future__ import annotations

import logging
from typing import Callable, Collection

from planarflow.errors import FaceNotInPiece
from planarflow.models import ElementKind, FaceRef, PhiElement
from planarflow.pdecomp.tree import DecompTree

logger = logging.getLogger(__name__)


def _ref(x: FaceRef | int) -> FaceRef:
    return x if isinstance(x, FaceRef) else FaceRef(x)


def core_path(tree: DecompTree, node: int, u: int, v: int) -> list[int]:
    """Φ between two natural faces of ``node``, without extensions."""
    if u == v:
        return []
    n = tree.nodes[node]
    if n.children is None:
        return tree.chain(node, u, v)
    i, j = tree.side(node, u), tree.side(node, v)
    if i == j:
        return core_path(tree, n.children[i], u, v)
    assert n.split_faces is not None
    return (
        core_path(tree, n.children[i], u, n.split_faces[i])
        + [tree.crossing(node, i)]
        + core_path(tree, n.children[j], n.split_faces[j], v)
    )


def _check(tree: DecompTree, node: int, ref: FaceRef) -> None:
    if not tree.contains(node, ref.vertex):
        raise FaceNotInPiece(f"face {ref.vertex} is not a natural face of node {node}")
    if ref.origin is not None and ref not in tree.nodes[node].zset:
        raise FaceNotInPiece(f"face {ref.vertex}@{ref.origin} is not in the split set of node {node}")


def phi_path(tree: DecompTree, node: int, x: FaceRef | int, y: FaceRef | int) -> list[int]:
    """Primal darts of Φ(node, x, y), extended at split-set endpoints."""
    x, y = _ref(x), _ref(y)
    _check(tree, node, x)
    _check(tree, node, y)
    path = core_path(tree, node, x.vertex, y.vertex)
    if x.origin is not None:
        path.insert(0, tree.entry_dart(x))
    if y.origin is not None:
        path.append(tree.exit_dart(y))
    return path


def element_path(tree: DecompTree, el: PhiElement) -> list[int]:
    if el.kind is ElementKind.EDGE:
        assert el.dart is not None
        return [el.dart]
    assert el.node is not None and el.x is not None and el.y is not None
    return core_path(tree, el.node, el.x.vertex, el.y.vertex)


def _decompose(
    tree: DecompTree, node: int, x: FaceRef, y: FaceRef, allowed: Callable[[int], bool]
) -> list[PhiElement]:
    if x.vertex == y.vertex:
        return []
    n = tree.nodes[node]
    if n.children is None:
        return [PhiElement(ElementKind.LEAF, node, x, y)]
    if x.origin is not None and y.origin is not None and allowed(node):
        return [PhiElement(ElementKind.NODE, node, x, y)]
    i, j = tree.side(node, x.vertex), tree.side(node, y.vertex)
    if i == j:
        return _decompose(tree, n.children[i], x, y, allowed)
    assert n.split_faces is not None
    fi = FaceRef(n.split_faces[i], node)
    fj = FaceRef(n.split_faces[j], node)
    return (
        _decompose(tree, n.children[i], x, fi, allowed)
        + [PhiElement(ElementKind.EDGE, node, dart=tree.crossing(node, i))]
        + _decompose(tree, n.children[j], fj, y, allowed)
    )


def decompose_phi_rdiv(tree: DecompTree, frontier: Collection[int], s: int, t: int) -> list[PhiElement]:
    """Split Φ(root, s, t) into leaf paths, split edges and split-set paths.

    Split-set elements are only emitted at nodes lying under ``frontier``;
    above it the recursion keeps descending.
    """
    front = set(frontier)
    for v in (s, t):
        if not tree.contains(tree.root, v):
            raise FaceNotInPiece(f"face {v} is not a face of the decomposed graph")
    elements = _decompose(tree, tree.root, FaceRef(s), FaceRef(t), lambda h: tree.is_under(h, front))
    logger.debug("phi %d -> %d: %d elements (depth %d)", s, t, len(elements), tree.depth)
    return elements


def decompose_phi(tree: DecompTree, s: int, t: int) -> list[PhiElement]:
    return decompose_phi_rdiv(tree, {tree.root}, s, t)
