"""Recursive decomposition of the dual of a plane graph.

A node is described by its natural faces, a set of primal vertices (each
primal vertex is a face of the dual). The node's dual edges are all slots
touching those vertices, so siblings share exactly the slots running
between them. Natural faces are split in two along a BFS spanning tree of
the node, cutting the tree edge that balances best; both halves stay
connected, which is what the face chains and Φ paths rely on. The dual
edges between the halves form the separating cycle of the node.
"""

from __future__ import annotations

import logging
import math
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Collection, Iterator

from planarflow.config import get_settings
from planarflow.errors import FaceNotInPiece, InvariantViolation
from planarflow.graphcore.embedding import PlanarEmbedding
from planarflow.models import FaceRef
from planarflow.pdecomp.holes import attach_simple_holes
from planarflow.pdecomp.piece import Piece, make_piece

logger = logging.getLogger(__name__)

# sum |H| and sum |boundary|^2 over the tree, in units of m log2 m
SIZE_BUDGET = 8
BOUNDARY_BUDGET = 64


@dataclass
class TreeNode:
    id: int
    faces: list[int]                 # natural faces (primal vertices)
    slots: list[int]                 # dual edges of the node (primal slot ids)
    boundary: list[int]              # dual vertices shared with the rest of the graph
    parent: int | None
    depth: int
    children: tuple[int, int] | None = None
    split_faces: tuple[int, int] | None = None
    split_dart: int | None = None    # primal dart from split_faces[0] to split_faces[1]
    zset: list[FaceRef] = field(default_factory=list)

    @property
    def is_leaf(self) -> bool:
        return self.children is None


class DecompTree:
    """Binary decomposition tree over the dual of ``primal``. Node 0 is the root."""

    root = 0

    def __init__(self, primal: PlanarEmbedding, nodes: list[TreeNode]) -> None:
        self.primal = primal
        self.nodes = nodes
        self._face_sets = [frozenset(n.faces) for n in nodes]
        self._leaf_of: dict[int, int] = {}
        self._pieces: dict[int, Piece] = {}
        for n in nodes:
            if n.is_leaf:
                for v in n.faces:
                    self._leaf_of[v] = n.id

    def __repr__(self) -> str:
        return f"DecompTree(nodes={len(self.nodes)}, depth={self.depth})"

    def __len__(self) -> int:
        return len(self.nodes)

    @cached_property
    def dual(self) -> PlanarEmbedding:
        return self.primal.dual()

    @property
    def depth(self) -> int:
        return max(n.depth for n in self.nodes)

    def contains(self, node: int, v: int) -> bool:
        return v in self._face_sets[node]

    def leaf_of(self, v: int) -> int:
        return self._leaf_of[v]

    def side(self, node: int, v: int) -> int:
        n = self.nodes[node]
        if n.children is None or not self.contains(node, v):
            raise FaceNotInPiece(f"face {v} is not a natural face of a child of node {node}")
        return 0 if self.contains(n.children[0], v) else 1

    def crossing(self, node: int, i: int) -> int:
        """Split dart of ``node`` oriented from its side-``i`` split face to the other."""
        d = self.nodes[node].split_dart
        assert d is not None
        return d if i == 0 else d ^ 1

    def sibling(self, ref: FaceRef) -> int:
        assert ref.origin is not None
        a, b = self.nodes[ref.origin].split_faces or (-1, -1)
        return b if ref.vertex == a else a

    def entry_dart(self, ref: FaceRef) -> int:
        """Dart from the sibling split face into ``ref``."""
        assert ref.origin is not None
        n = self.nodes[ref.origin]
        assert n.split_faces is not None
        return self.crossing(ref.origin, 1 if ref.vertex == n.split_faces[0] else 0)

    def exit_dart(self, ref: FaceRef) -> int:
        return self.entry_dart(ref) ^ 1

    def ancestors(self, node: int) -> Iterator[int]:
        p = self.nodes[node].parent
        while p is not None:
            yield p
            p = self.nodes[p].parent

    def descendants(self, node: int) -> Iterator[int]:
        stack = [node]
        while stack:
            h = stack.pop()
            yield h
            kids = self.nodes[h].children
            if kids is not None:
                stack.extend(reversed(kids))

    def is_under(self, node: int, frontier: Collection[int]) -> bool:
        return node in frontier or any(a in frontier for a in self.ancestors(node))

    def leaves(self) -> list[int]:
        return [n.id for n in self.nodes if n.is_leaf]

    def piece(self, node: int) -> Piece:
        """The node as a piece of the dual, with its holes."""
        if node not in self._pieces:
            p = make_piece(self.dual, self.nodes[node].slots)
            p.boundary = list(self.nodes[node].boundary)
            self._pieces[node] = attach_simple_holes(p)
        return self._pieces[node]

    def chain(self, node: int, u: int, v: int) -> list[int]:
        """Primal darts of a path from ``u`` to ``v`` through natural faces of ``node``."""
        faces = self._face_sets[node]
        if u not in faces or v not in faces:
            raise FaceNotInPiece(f"faces {u}, {v} are not both natural faces of node {node}")
        return _bfs_path(self.primal, faces, u, v)

    def size_sums(self) -> tuple[int, int]:
        return sum(len(n.slots) for n in self.nodes), sum(len(n.boundary) ** 2 for n in self.nodes)

    def size_ratios(self) -> tuple[float, float]:
        """``size_sums`` divided by m log2 m, m the number of primal slots."""
        m = max(self.primal.slots, 2)
        scale = m * math.log2(m)
        total, squares = self.size_sums()
        return total / scale, squares / scale


def _bfs_path(primal: PlanarEmbedding, faces: Collection[int], u: int, v: int) -> list[int]:
    parent: dict[int, int] = {u: -1}
    queue = deque([u])
    while queue and v not in parent:
        x = queue.popleft()
        for d in primal.rotation[x]:
            w = primal.head[d]
            if w in faces and w not in parent:
                parent[w] = d
                queue.append(w)
    if v not in parent:
        raise FaceNotInPiece(f"faces {u} and {v} are not joined inside the node")
    path: list[int] = []
    while v != u:
        d = parent[v]
        path.append(d)
        v = primal.tail[d]
    path.reverse()
    return path


def _bfs_tree(primal: PlanarEmbedding, faces: frozenset[int], root: int) -> tuple[dict[int, int], list[int]]:
    parent: dict[int, int] = {root: -1}
    order = [root]
    queue = deque([root])
    while queue:
        x = queue.popleft()
        for d in primal.rotation[x]:
            w = primal.head[d]
            if w in faces and w not in parent:
                parent[w] = d
                order.append(w)
                queue.append(w)
    return parent, order


def _bisect(primal: PlanarEmbedding, faces: list[int]) -> tuple[list[int], list[int], int]:
    fs = frozenset(faces)
    _, order = _bfs_tree(primal, fs, faces[0])
    parent, order = _bfs_tree(primal, fs, order[-1])
    far = order[-1]
    path = [far]
    while parent[path[-1]] >= 0:
        path.append(primal.tail[parent[path[-1]]])
    root = path[len(path) // 2]
    parent, order = _bfs_tree(primal, fs, root)
    if len(order) != len(faces):
        raise FaceNotInPiece("natural faces of a node must be connected")
    size = {v: 1 for v in order}
    kids: dict[int, list[int]] = {}
    for v in reversed(order[1:]):
        p = primal.tail[parent[v]]
        size[p] += size[v]
        kids.setdefault(p, []).append(v)
    total = len(order)
    cut = min(order[1:], key=lambda v: (max(size[v], total - size[v]), v))
    inside = set()
    stack = [cut]
    while stack:
        v = stack.pop()
        inside.add(v)
        stack.extend(kids.get(v, ()))
    first = sorted(inside)
    second = sorted(fs - inside)
    crossing = [
        (primal.tail[d], primal.head[d], d)
        for v in first
        for d in primal.rotation[v]
        if primal.head[d] in fs and primal.head[d] not in inside
    ]
    dart = min(crossing)[2]
    return first, second, dart


def _boundary(primal: PlanarEmbedding, faces: frozenset[int], slots: list[int]) -> list[int]:
    touching = {primal.face_of[2 * k + b] for k in slots for b in (0, 1)}
    return sorted(
        f for f in touching
        if any(primal.tail[d] not in faces or primal.head[d] not in faces for d in primal.faces[f])
    )


def build_decomp_tree(primal: PlanarEmbedding, *, leaf_cutoff: int | None = None) -> DecompTree:
    """Decompose the dual of a connected plane graph down to leaves of ``leaf_cutoff`` faces."""
    cutoff = leaf_cutoff if leaf_cutoff is not None else get_settings().leaf_cutoff
    if len(primal.components()) != 1:
        raise ValueError("build_decomp_tree needs a connected embedding")
    nodes: list[TreeNode] = []

    def make(faces: list[int], parent: int | None, depth: int, zset: list[FaceRef]) -> int:
        fs = frozenset(faces)
        slots = sorted({d >> 1 for v in faces for d in primal.rotation[v]})
        node = TreeNode(len(nodes), faces, slots, _boundary(primal, fs, slots), parent, depth, zset=zset)
        nodes.append(node)
        if len(faces) <= max(cutoff, 1):
            return node.id
        first, second, dart = _bisect(primal, faces)
        node.split_faces = (primal.tail[dart], primal.head[dart])
        node.split_dart = dart
        kids = []
        for i, part in enumerate((first, second)):
            members = set(part)
            inherited = [z for z in zset if z.vertex in members]
            kids.append(make(part, node.id, depth + 1, inherited + [FaceRef(node.split_faces[i], node.id)]))
        node.children = (kids[0], kids[1])
        return node.id

    make(list(range(primal.n)), None, 0, [])
    tree = DecompTree(primal, nodes)
    total, squares = tree.size_sums()
    size_ratio, boundary_ratio = tree.size_ratios()
    logger.info(
        "decomposition tree: %d nodes, depth %d, sum |H| = %d (%.2f m log m), sum |boundary|^2 = %d (%.2f m log m)",
        len(nodes), tree.depth, total, size_ratio, squares, boundary_ratio,
    )
    if get_settings().debug_asserts and (size_ratio > SIZE_BUDGET or boundary_ratio > BOUNDARY_BUDGET):
        raise InvariantViolation(
            f"decomposition tree over budget: {size_ratio:.2f} and {boundary_ratio:.2f} m log m"
        )
    return tree


def dump_decomposition(tree: DecompTree) -> str:
    """One line per node: boundary ids, hole count and split faces."""
    lines = []
    for n in tree.nodes:
        split = "-" if n.split_faces is None else f"{n.split_faces[0]},{n.split_faces[1]}"
        zset = ";".join(f"{z.vertex}@{z.origin}" for z in n.zset) or "-"
        lines.append(
            f"node={n.id} parent={'-' if n.parent is None else n.parent} depth={n.depth} "
            f"faces={len(n.faces)} slots={len(n.slots)} "
            f"boundary={','.join(map(str, n.boundary)) or '-'} holes={len(tree.piece(n.id).holes)} "
            f"split={split} dart={'-' if n.split_dart is None else n.split_dart} z={zset}"
        )
    return "\n".join(lines) + "\n"
