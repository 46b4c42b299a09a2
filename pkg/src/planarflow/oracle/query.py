"""Feasibility queries and cut reporting over an OracleIndex.

``detect`` walks Φ(root, s, t) down the decomposition tree. A leaf
contributes its shifted dual graph directly. A node entered between two
split-set faces contributes its stored pair data. Otherwise the path
either stays inside one child, and the other child contributes its plain
DDG, or crosses the split edge, and both children are searched. The
collected DDGs and leaf graphs are finally searched for a negative cycle
together.
"""

from __future__ import annotations

import logging
from collections import deque
from dataclasses import dataclass, field

from planarflow.ddg import DenseDistanceGraph, expand_walk, piece_graph, union_ddg
from planarflow.errors import NotACut
from planarflow.models import FaceRef, PhiElement
from planarflow.negcycle import detect_negative_cycle
from planarflow.oracle.index import OracleIndex
from planarflow.paths import negative_cycle_in_walk
from planarflow.pdecomp.phi import decompose_phi_rdiv, phi_path
from planarflow.proximity.base import EdgeRef, ProximitySource
from planarflow.proximity.compose import UnionSource
from planarflow.proximity.explicit import ExplicitGraph

logger = logging.getLogger(__name__)


@dataclass
class QueryScratch:
    """Per-query state; the index is never written to."""

    s: int
    t: int
    elements: list[PhiElement] = field(default_factory=list)
    ddgs: list[DenseDistanceGraph] = field(default_factory=list)
    leaf_graphs: list[ExplicitGraph] = field(default_factory=list)
    cycle: list[int] | None = None      # dual darts of a negative cycle
    leaves: int = 0
    pairs: int = 0

    @property
    def feasible(self) -> bool:
        return self.cycle is None


def _check_pair(index: OracleIndex, s: int, t: int) -> None:
    for v in (s, t):
        if not 0 <= v < index.n:
            raise ValueError(f"vertex {v} is outside 0..{index.n - 1}")
    if s == t:
        raise ValueError("source and sink must differ")


def _leaf(index: OracleIndex, scratch: QueryScratch, node: int, x: FaceRef, y: FaceRef) -> None:
    scratch.leaves += 1
    graph = piece_graph(index.tree.piece(node), index.shifted(phi_path(index.tree, node, x, y)))
    edges = []
    for e in graph.edges():
        if e.tail == e.head:
            if e.weight < 0:
                scratch.cycle = [e.key[0]]
                return
            continue
        edges.append(EdgeRef(e.tail, e.head, e.weight, (node, e.key[0])))
    scratch.leaf_graphs.append(ExplicitGraph(graph.vertices, edges))


def detect(index: OracleIndex, scratch: QueryScratch, node: int, x: FaceRef, y: FaceRef) -> None:
    """Collect the pieces of the λ-shifted dual of ``node`` around Φ(node, x, y)."""
    if scratch.cycle is not None:
        return
    n = index.tree.nodes[node]
    if n.children is None:
        _leaf(index, scratch, node, x, y)
        return
    if x.origin is not None and y.origin is not None and index.precomputed(node):
        scratch.pairs += 1
        pair = index.pair(node, x, y)
        if pair.negative:
            scratch.cycle = list(pair.cycle)
        else:
            assert pair.ddg is not None
            scratch.ddgs.append(pair.ddg)
        return
    i, j = index.tree.side(node, x.vertex), index.tree.side(node, y.vertex)
    if i == j:
        detect(index, scratch, n.children[i], x, y)
        scratch.ddgs.extend(index.cover(n.children[1 - i]))
        return
    assert n.split_faces is not None
    detect(index, scratch, n.children[i], x, FaceRef(n.split_faces[i], node))
    detect(index, scratch, n.children[j], FaceRef(n.split_faces[j], node), y)


def run_query(index: OracleIndex, s: int, t: int) -> QueryScratch:
    _check_pair(index, s, t)
    tree = index.tree
    scratch = QueryScratch(s, t, decompose_phi_rdiv(tree, index.frontier, s, t))
    detect(index, scratch, tree.root, FaceRef(s), FaceRef(t))
    if scratch.cycle is None:
        parts: list[ProximitySource] = [union_ddg(scratch.ddgs), *scratch.leaf_graphs]
        outcome = detect_negative_cycle(UnionSource(parts))
        if outcome.cycle is not None:
            walk = expand_walk({d.key: d for d in scratch.ddgs}, outcome.cycle)
            scratch.cycle = [e.key[-1] for e in negative_cycle_in_walk(walk)]
    logger.debug(
        "query %d -> %d at lambda=%d: %d leaves, %d pairs, %d ddgs, feasible=%s",
        s, t, index.lam, scratch.leaves, scratch.pairs, len(scratch.ddgs), scratch.feasible,
    )
    return scratch


def query_feasible(index: OracleIndex, s: int, t: int) -> bool:
    """Whether the network carries an s,t-flow of value ``index.lam``."""
    return run_query(index, s, t).feasible


def verify_cut(index: OracleIndex, s: int, t: int, cut: list[int]) -> None:
    """Raise NotACut unless ``cut`` is cheaper than λ and separates t from s."""
    net = index.net
    capacity = sum(net[d].capacity for d in cut)
    if capacity >= index.lam:
        raise NotACut(f"cut of {len(cut)} darts has capacity {capacity}, not below {index.lam}")
    removed = set(cut)
    seen = {s}
    queue = deque([s])
    while queue:
        v = queue.popleft()
        for d in index.emb.rotation[v]:
            w = index.emb.head[d]
            if net[d].capacity > 0 and d not in removed and w not in seen:
                seen.add(w)
                queue.append(w)
    if t in seen:
        raise NotACut(f"removing {len(cut)} darts leaves {t} reachable from {s}")


def report_cut(index: OracleIndex, s: int, t: int) -> list[int] | None:
    """Darts of an s,t-cut with capacity below λ, or None when the flow is feasible."""
    scratch = run_query(index, s, t)
    if scratch.cycle is None:
        return None
    m = index.net.m
    cut = sorted({d for d in scratch.cycle if d < m and index.net[d].capacity > 0})
    verify_cut(index, s, t, cut)
    logger.info("cut %d -> %d: %d darts below lambda=%d", s, t, len(cut), index.lam)
    return cut
