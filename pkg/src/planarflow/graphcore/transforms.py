"""Standard transformations of embedded graphs."""

from __future__ import annotations

import logging
from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from planarflow.graphcore.embedding import PlanarEmbedding
from planarflow.graphcore.network import Edge, FlowNetwork

logger = logging.getLogger(__name__)


@dataclass
class Triangulation:
    embedding: PlanarEmbedding
    weights: list[int | None] | None
    added: list[int] = field(default_factory=list)     # new darts
    apexes: list[int] = field(default_factory=list)    # new vertices


def _rebuild(
    emb: PlanarEmbedding, inserts: dict[int, list[int]], extra: list[list[int]]
) -> PlanarEmbedding:
    rotation: list[list[int]] = []
    for r in emb.rotation:
        row: list[int] = []
        for d in r:
            row.append(d)
            row.extend(inserts.get(d, ()))
        rotation.append(row)
    rotation.extend(extra)
    return PlanarEmbedding(rotation)


def triangulate(
    emb: PlanarEmbedding,
    big_weight: int,
    weights: Sequence[int | None] | None = None,
) -> Triangulation:
    """Split every face into triangles.

    Faces with distinct corner vertices are fanned from their first corner.
    Faces that repeat a vertex, and faces shorter than three, get a new apex
    vertex joined to every corner. New darts carry ``big_weight``.
    """
    inserts: dict[int, list[int]] = {}
    extra: list[list[int]] = []
    next_dart = emb.m
    next_vertex = emb.n
    apexes: list[int] = []
    for face in emb.faces:
        k = len(face)
        if k == 3:
            continue
        corners = [emb.tail[d] for d in face]
        if k > 3 and len(set(corners)) == k:
            # diagonals v0 -> v_j for j = 2..k-2, stacked in the corner before face[0]
            block: list[int] = []
            for j in range(k - 2, 1, -1):
                a = next_dart
                next_dart += 2
                block.append(a)
                inserts.setdefault(face[j - 1] ^ 1, []).append(a + 1)
            inserts.setdefault(face[k - 1] ^ 1, []).extend(block)
            continue
        apex = next_vertex
        next_vertex += 1
        apexes.append(apex)
        spokes = []
        for i in range(k):
            b = next_dart          # corner_i -> apex
            next_dart += 2
            spokes.append(b)
            inserts.setdefault(face[i - 1] ^ 1, []).append(b)
        extra.append([spokes[i] + 1 for i in range(k - 1, -1, -1)])
    if next_dart == emb.m:
        return Triangulation(emb, list(weights) if weights is not None else None)
    new = _rebuild(emb, inserts, extra)
    added = list(range(emb.m, next_dart))
    new_weights = None
    if weights is not None:
        new_weights = list(weights) + [big_weight] * len(added)
    logger.debug("triangulated: %d darts added, %d apex vertices", len(added), len(apexes))
    return Triangulation(new, new_weights, added, apexes)


def degree3_expand(
    net: FlowNetwork, emb: PlanarEmbedding
) -> tuple[FlowNetwork, PlanarEmbedding, list[list[int]]]:
    """Replace every vertex by a ring of degree-3 copies.

    A vertex of degree k >= 2 becomes k copies joined in a cycle; a vertex of
    degree 1 gets a loop. Ring darts have capacity larger than the total
    finite capacity, so no finite cut ever uses them. Original dart ids and
    vertex ids are kept (copy 0 of ``v`` is ``v``); ``copies[v]`` lists
    all copies of ``v``.
    """
    ring_cap: int | float = net.total_finite_capacity() + 1
    edges = list(net.edges)
    rotation: list[list[int]] = [list(r) for r in emb.rotation]
    copies: list[list[int]] = [[v] for v in range(emb.n)]
    n = emb.n

    def new_slot(tail: int, head: int) -> int:
        d = len(edges)
        edges.append(Edge(tail, head, ring_cap, 0))
        edges.append(Edge(head, tail, ring_cap, 0))
        return d

    for v in range(emb.n):
        r = emb.rotation[v]
        k = len(r)
        if k == 3 or k == 0:
            continue
        if k == 1:
            loop = new_slot(v, v)
            rotation[v] = [r[0], loop, loop + 1]
            continue
        ids = [v] + list(range(n, n + k - 1))
        n += k - 1
        copies[v] = ids
        while len(rotation) < n:
            rotation.append([])
        ring = [new_slot(ids[i], ids[(i + 1) % k]) for i in range(k)]
        for i in range(k):
            rotation[ids[i]] = [r[i], ring[i], ring[i - 1] + 1]
        for i in range(1, k):
            d = r[i]
            edges[d] = Edge(ids[i], edges[d].head, edges[d].capacity, edges[d].cost)
            m = d ^ 1
            edges[m] = Edge(edges[m].tail, ids[i], edges[m].capacity, edges[m].cost)
    out = FlowNetwork(n, edges)
    out_emb = PlanarEmbedding(rotation)
    logger.debug("degree-3 expansion: %d -> %d vertices", emb.n, n)
    return out, out_emb, copies


def connect_components(net: FlowNetwork, emb: PlanarEmbedding) -> tuple[FlowNetwork, PlanarEmbedding]:
    """Join every component to the first by a capacity-0 slot; flows and cuts are unchanged."""
    comps = emb.components()
    if len(comps) <= 1:
        return net, emb
    edges = list(net.edges)
    rotation = [list(r) for r in emb.rotation]
    anchor = comps[0][0]
    for comp in comps[1:]:
        v = comp[0]
        d = len(edges)
        edges.append(Edge(anchor, v, 0, 0))
        edges.append(Edge(v, anchor, 0, 0))
        rotation[anchor].append(d)
        rotation[v].append(d + 1)
    logger.debug("joined %d components with capacity-0 slots", len(comps))
    return FlowNetwork(net.n, edges), PlanarEmbedding(rotation)


def crossing_number(primal_edges: Iterable[int], dual_edges: Iterable[int]) -> int:
    """Signed number of times ``primal_edges`` crosses ``dual_edges``.

    Dual dart ids equal primal ones, so ``e`` crosses ``B`` forward when
    ``e`` is in ``B`` and backward when ``e ^ 1`` is.
    """
    b = set(dual_edges)
    count = Counter(primal_edges)
    return sum(c for e, c in count.items() if e in b) - sum(
        c for e, c in count.items() if e ^ 1 in b
    )

