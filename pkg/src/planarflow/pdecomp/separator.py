"""Fundamental-cycle separators of triangulated plane graphs.

A BFS tree is grown from a pseudo-center. The duals of the non-tree edges
form a spanning tree of the faces, and every non-tree edge closes a cycle
that encloses exactly one subtree of that face tree. The edge whose
subtree weight is closest to half of the total wins.
"""

from __future__ import annotations

import logging
from collections import deque
from dataclasses import dataclass, field
from typing import Collection, Sequence

from planarflow.errors import TooSmall
from planarflow.graphcore.embedding import PlanarEmbedding
from planarflow.models import SeparatorCriterion

logger = logging.getLogger(__name__)

BALANCE_LIMIT = 0.75


@dataclass
class Separator:
    darts: list[int]                 # closed walk, simple
    vertices: list[int]
    inside: set[int] = field(default_factory=set)   # face ids enclosed by the cycle
    balance: float = 0.0             # heavier side over total weight


def _bfs(emb: PlanarEmbedding, root: int) -> tuple[list[int], list[int]]:
    """Parent darts (pointing into each vertex) and BFS order."""
    parent = [-2] * emb.n
    parent[root] = -1
    order = [root]
    queue = deque([root])
    while queue:
        v = queue.popleft()
        for d in emb.rotation[v]:
            w = emb.head[d]
            if parent[w] == -2:
                parent[w] = d
                order.append(w)
                queue.append(w)
    return parent, order


def _pseudo_center(emb: PlanarEmbedding) -> int:
    _, order = _bfs(emb, 0)
    a = order[-1]
    parent, order = _bfs(emb, a)
    path = [order[-1]]
    while parent[path[-1]] >= 0:
        path.append(emb.tail[parent[path[-1]]])
    return path[len(path) // 2]


def face_weights(
    emb: PlanarEmbedding,
    criterion: SeparatorCriterion,
    *,
    marked: Collection[int] = (),
    hole_faces: Collection[int] = (),
    ignore: Collection[int] = (),
) -> list[float]:
    """Spread the chosen weight over faces.

    VERTICES gives every vertex weight 1, split evenly over its corners;
    BOUNDARY does the same for ``marked`` vertices only; HOLES puts weight 1
    on each face in ``hole_faces``. Vertices in ``ignore`` (apexes added by
    triangulation) weigh nothing. An all-zero result falls back to VERTICES.
    """
    weights = [0.0] * len(emb.faces)
    if criterion is SeparatorCriterion.HOLES:
        for f in hole_faces:
            weights[f] += 1.0
    else:
        skip = set(ignore)
        chosen = set(marked) if criterion is SeparatorCriterion.BOUNDARY else None
        for f, face in enumerate(emb.faces):
            for d in face:
                v = emb.tail[d]
                if v in skip or (chosen is not None and v not in chosen):
                    continue
                weights[f] += 1.0 / emb.degree(v)
    if not any(weights):
        if criterion is SeparatorCriterion.VERTICES:
            return [1.0] * len(emb.faces)
        return face_weights(emb, SeparatorCriterion.VERTICES, ignore=ignore)
    return weights


def cycle_separator(
    emb: PlanarEmbedding,
    weights: Sequence[float] | None = None,
    *,
    min_vertices: int = 4,
) -> Separator:
    """A simple cycle splitting the face weight as evenly as the BFS tree allows."""
    if emb.n < min_vertices or len(emb.faces) < 2:
        raise TooSmall(f"graph with {emb.n} vertices and {len(emb.faces)} faces is too small to separate")
    nfaces = len(emb.faces)
    w = list(weights) if weights is not None else [1.0] * nfaces
    total = sum(w) or 1.0
    root = _pseudo_center(emb)
    parent, _ = _bfs(emb, root)
    if any(p == -2 for p in parent):
        raise ValueError("cycle_separator needs a connected embedding")
    tree = {parent[v] >> 1 for v in range(emb.n) if parent[v] >= 0}

    adj: list[list[tuple[int, int]]] = [[] for _ in range(nfaces)]
    for k in range(emb.slots):
        if k in tree:
            continue
        f, g = emb.face_of[2 * k], emb.face_of[2 * k + 1]
        if f != g:
            adj[f].append((g, k))
            adj[g].append((f, k))

    up = [-2] * nfaces        # slot to the parent face
    up[0] = -1
    order = [0]
    stack = [0]
    while stack:
        f = stack.pop()
        for g, k in adj[f]:
            if up[g] == -2:
                up[g] = k
                order.append(g)
                stack.append(g)
    sub = list(w)
    kids: dict[int, int] = {}
    for f in reversed(order[1:]):
        k = up[f]
        other = emb.face_of[2 * k] if emb.face_of[2 * k] != f else emb.face_of[2 * k + 1]
        sub[other] += sub[f]
        kids[f] = other

    best_face, best = -1, (2.0, -1)
    for f in order[1:]:
        side = max(sub[f], total - sub[f]) / total
        cand = (side, up[f])
        if cand < best:
            best_face, best = f, cand
    if best_face < 0:
        raise TooSmall("no non-tree edge to close a separating cycle")

    inside = {best_face}
    stack = [best_face]
    children: dict[int, list[int]] = {}
    for f, p in kids.items():
        children.setdefault(p, []).append(f)
    while stack:
        f = stack.pop()
        for g in children.get(f, ()):
            inside.add(g)
            stack.append(g)

    darts, vertices = _fundamental_cycle(emb, parent, best[1])
    sep = Separator(darts, vertices, inside, best[0])
    if sep.balance > BALANCE_LIMIT:
        logger.warning("separator balance %.3f is above %.2f (n=%d)", sep.balance, BALANCE_LIMIT, emb.n)
    logger.debug("separator: %d vertices on cycle, balance %.3f", len(vertices), sep.balance)
    return sep


def _fundamental_cycle(emb: PlanarEmbedding, parent: list[int], k: int) -> tuple[list[int], list[int]]:
    u, v = emb.tail[2 * k], emb.head[2 * k]
    if u == v:
        return [2 * k], [u]

    def chain(x: int) -> list[int]:
        out = [x]
        while parent[out[-1]] >= 0:
            out.append(emb.tail[parent[out[-1]]])
        return out

    cu, cv = chain(u), chain(v)
    on_v = set(cv)
    lca = next(x for x in cu if x in on_v)
    left = cu[: cu.index(lca) + 1]                 # u .. lca
    right = cv[: cv.index(lca)]                    # v .. just below lca
    darts = [parent[x] ^ 1 for x in left[:-1]]     # climbing from u
    darts.extend(parent[x] for x in reversed(right))
    darts.append(2 * k + 1)                        # v -> u
    vertices = left + list(reversed(right))
    return darts, vertices
