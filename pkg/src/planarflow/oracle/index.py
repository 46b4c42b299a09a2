"""Preprocessed data for answering "is there an s,t-flow of value λ?".

The network is made connected, expanded to degree 3 and its dual is
decomposed recursively. For every decomposition node the index keeps the
dense distance graph of the node under plain capacities, and for every
ordered pair of split-set faces of the node either a negative dual cycle
or the DDG of the node with the λ shift applied along the Φ path between
the two faces.

A dynamic index only keeps pair data below a frontier of nodes with at
most ``r`` faces, so a capacity update only recomputes frontier nodes
holding the edge and their descendants.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from typing import Sequence

from planarflow.config import get_settings
from planarflow.ddg import DenseDistanceGraph, boundary_groups, build_piece_ddg, piece_graph
from planarflow.errors import StaticIndex
from planarflow.graphcore.embedding import PlanarEmbedding
from planarflow.graphcore.network import FlowNetwork
from planarflow.graphcore.transforms import connect_components, degree3_expand
from planarflow.models import FaceRef, OracleMode
from planarflow.oracle.venkatesan import ShiftedWeights, dual_weights
from planarflow.paths import bellman_ford
from planarflow.pdecomp.holes import hole_sequences
from planarflow.pdecomp.phi import phi_path
from planarflow.pdecomp.tree import DecompTree, build_decomp_tree
from planarflow.weights import INF

logger = logging.getLogger(__name__)


@dataclass
class PairData:
    key: int
    x: FaceRef
    y: FaceRef
    negative: bool
    cycle: list[int] = field(default_factory=list)   # dual darts
    ddg: DenseDistanceGraph | None = None


@dataclass
class NodeData:
    plain: DenseDistanceGraph
    groups: list[list[int]]
    pairs: dict[tuple[FaceRef, FaceRef], PairData] = field(default_factory=dict)


@dataclass
class PreparedGraph:
    """Connected degree-3 expansion of a network and the decomposition of its dual."""

    expanded: FlowNetwork
    embedding: PlanarEmbedding
    tree: DecompTree
    weights: list[int | None]
    original_m: int
    leaf_cutoff: int


def prepare(net: FlowNetwork, emb: PlanarEmbedding, *, leaf_cutoff: int | None = None) -> PreparedGraph:
    if len(net) != emb.m or net.n != emb.n:
        raise ValueError(f"network ({net.n}, {len(net)}) does not match embedding ({emb.n}, {emb.m})")
    joined, joined_emb = connect_components(net, emb)
    expanded, exp_emb, _ = degree3_expand(joined, joined_emb)
    cutoff = leaf_cutoff if leaf_cutoff is not None else get_settings().leaf_cutoff
    tree = build_decomp_tree(exp_emb, leaf_cutoff=cutoff)
    # ring darts keep the copies of a vertex together
    weights = dual_weights(expanded, infinite=range(joined.m, expanded.m))
    return PreparedGraph(expanded, exp_emb, tree, weights, net.m, cutoff)


def default_r(n: int) -> int:
    return max(2, math.ceil(n ** (6 / 7)))


def dynamic_frontier(tree: DecompTree, r: int) -> list[int]:
    """Topmost nodes with at most ``r`` faces; leaves always qualify."""
    out = []
    for node in tree.nodes:
        small = len(node.faces) <= r or node.is_leaf
        if small and (node.parent is None or len(tree.nodes[node.parent].faces) > r):
            out.append(node.id)
    return out


class OracleIndex:
    """Feasibility index for one value of λ."""

    def __init__(
        self,
        net: FlowNetwork,
        emb: PlanarEmbedding,
        lam: int,
        mode: OracleMode = OracleMode.STATIC,
        r: int | None = None,
        *,
        prepared: PreparedGraph | None = None,
        leaf_cutoff: int | None = None,
    ) -> None:
        if lam < 1 or int(lam) != lam:
            raise ValueError(f"lambda must be a positive integer, got {lam!r}")
        prep = prepared if prepared is not None else prepare(net, emb, leaf_cutoff=leaf_cutoff)
        self.net = net
        self.emb = emb
        self.lam = int(lam)
        self.mode = mode
        self.tree = prep.tree
        self.expanded = prep.expanded
        self.weights = list(prep.weights)
        self.leaf_cutoff = prep.leaf_cutoff
        self.max_capacity = max([0] + [int(e.capacity) for e in net if e.capacity != INF])
        if mode is OracleMode.DYNAMIC:
            self.r = r if r is not None else default_r(self.tree.primal.n)
            self.frontier = dynamic_frontier(self.tree, self.r)
        else:
            self.r = None
            self.frontier = [self.tree.root]
        self._front = set(self.frontier)
        self._under = [self.tree.is_under(h, self._front) for h in range(len(self.tree))]
        self._slot_sets = [frozenset(n.slots) for n in self.tree.nodes]
        self.nodes: dict[int, NodeData] = {}
        self.next_key = len(self.tree)

    def __repr__(self) -> str:
        return (
            f"OracleIndex(lam={self.lam}, mode={self.mode.value}, nodes={len(self.tree)}, "
            f"frontier={len(self.frontier)})"
        )

    @property
    def n(self) -> int:
        return self.net.n

    def shifted(self, path: Sequence[int]) -> ShiftedWeights:
        return ShiftedWeights(self.weights, path, self.lam)

    def precomputed(self, node: int) -> bool:
        return self._under[node]

    def cover(self, node: int) -> list[DenseDistanceGraph]:
        """Plain DDGs whose union is the dual of ``node``."""
        if self._under[node]:
            return [self.nodes[node].plain]
        return [self.nodes[f].plain for f in self.frontier if node in self.tree.ancestors(f)]

    def pair(self, node: int, x: FaceRef, y: FaceRef) -> PairData:
        return self.nodes[node].pairs[(x, y)]

    def build(self) -> OracleIndex:
        for h in range(len(self.tree)):
            if self._under[h]:
                self._compute_node(h)
        pairs = sum(len(d.pairs) for d in self.nodes.values())
        negative = sum(p.negative for d in self.nodes.values() for p in d.pairs.values())
        logger.info(
            "oracle index lambda=%d (%s): %d nodes, depth %d, %d pairs (%d negative)",
            self.lam, self.mode.value, len(self.tree), self.tree.depth, pairs, negative,
        )
        return self

    def _compute_node(self, h: int) -> None:
        piece = self.tree.piece(h)
        groups = boundary_groups(piece.boundary, hole_sequences(piece))
        plain = build_piece_ddg(piece, self.weights, {}, key=h, groups=groups)
        old = self.nodes.get(h)
        data = NodeData(plain, groups)
        zset = self.tree.nodes[h].zset
        for x in zset:
            for y in zset:
                if x == y:
                    continue
                if old is not None and (x, y) in old.pairs:
                    key = old.pairs[(x, y)].key
                else:
                    key = self.next_key
                    self.next_key += 1
                data.pairs[(x, y)] = self._compute_pair(h, groups, x, y, key)
        self.nodes[h] = data

    def _compute_pair(self, h: int, groups: list[list[int]], x: FaceRef, y: FaceRef, key: int) -> PairData:
        piece = self.tree.piece(h)
        weights = self.shifted(phi_path(self.tree, h, x, y))
        graph = piece_graph(piece, weights)
        outcome = bellman_ford(graph.vertices, list(graph.edges()))
        if outcome.cycle is not None:
            return PairData(key, x, y, True, [e.key[0] for e in outcome.cycle])
        assert outcome.price is not None
        ddg = build_piece_ddg(piece, weights, outcome.price, key=key, groups=groups)
        return PairData(key, x, y, False, ddg=ddg)

    def update_capacity(self, edge: int, capacity: int) -> list[int]:
        """Set the capacity of dart ``edge`` and recompute every node holding it.

        Returns the recomputed node ids.
        """
        if self.mode is not OracleMode.DYNAMIC:
            raise StaticIndex("capacity updates need an index built in dynamic mode")
        if not 0 <= edge < self.net.m:
            raise ValueError(f"edge {edge} is outside 0..{self.net.m - 1}")
        if capacity < 0 or int(capacity) != capacity:
            raise ValueError(f"capacity must be a nonnegative integer, got {capacity!r}")
        if capacity > self.max_capacity:
            logger.warning(
                "capacity %d on edge %d is above the build-time maximum %d", capacity, edge, self.max_capacity
            )
        self.net = self.net.with_capacity(edge, capacity)
        self.expanded = self.expanded.with_capacity(edge, capacity)
        self.weights[edge] = int(capacity)
        slot = edge >> 1
        touched = [
            h
            for f in self.frontier
            if slot in self._slot_sets[f]
            for h in self.tree.descendants(f)
            if slot in self._slot_sets[h]
        ]
        for h in touched:
            self._compute_node(h)
        logger.info("edge %d -> capacity %d: recomputed %d nodes", edge, capacity, len(touched))
        return touched


def build_feasible(
    net: FlowNetwork,
    emb: PlanarEmbedding,
    lam: int,
    mode: OracleMode = OracleMode.STATIC,
    r: int | None = None,
    *,
    leaf_cutoff: int | None = None,
    prepared: PreparedGraph | None = None,
) -> OracleIndex:
    """Preprocess ``net`` for s,t-flow-of-value-``lam`` queries."""
    return OracleIndex(net, emb, lam, mode, r, prepared=prepared, leaf_cutoff=leaf_cutoff).build()


def update_capacity(index: OracleIndex, edge: int, capacity: int) -> list[int]:
    return index.update_capacity(edge, capacity)
