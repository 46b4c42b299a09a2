"""Dense distance graphs: boundary-to-boundary distances of a piece as Monge matrices.

Distances come from one price-reduced Dijkstra per boundary vertex. The
boundary is grouped by hole in cyclic order; within a hole the sequence is
halved recursively and every pair of halves gives two matrices, and every
pair of distinct holes gives one. Each candidate is checked and cut into
row blocks until Monge, so the union of the matrices holds every
boundary-to-boundary distance exactly and nothing shorter.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

from planarflow.config import get_settings
from planarflow.errors import InvariantViolation
from planarflow.models import NegCycleOutcome
from planarflow.monge.matrix import MongeMatrix, split_until_monge
from planarflow.monge.views import MongeSource
from planarflow.negcycle import detect_negative_cycle
from planarflow.paths import negative_cycle_in_walk
from planarflow.pdecomp.holes import hole_sequences
from planarflow.pdecomp.piece import Piece
from planarflow.proximity.base import ClosestPairView, EdgeRef, NearNeighborView, PriceFn
from planarflow.proximity.dijkstra import ShortestPaths, dijkstra_cp
from planarflow.proximity.explicit import ExplicitGraph, cp_explicit
from planarflow.weights import INF

logger = logging.getLogger(__name__)

Table = list[list[int | float]]


def piece_graph(piece: Piece, weights: Sequence[int | None]) -> ExplicitGraph:
    """The piece's darts in parent ids; ``weights`` is indexed by parent dart, None drops a dart."""
    emb = piece.embedding
    edges = []
    for d in range(emb.m):
        pd = piece.dart_map[d]
        w = weights[pd]
        if w is None:
            continue
        edges.append(EdgeRef(piece.vertex_map[emb.tail[d]], piece.vertex_map[emb.head[d]], w, (pd,)))
    return ExplicitGraph(sorted(set(piece.vertex_map)), edges)


def boundary_groups(boundary: Sequence[int], sequences: Iterable[Sequence[int]]) -> list[list[int]]:
    """Boundary vertices grouped by the first hole they lie on, in hole order."""
    wanted = set(boundary)
    taken: set[int] = set()
    groups: list[list[int]] = []
    for seq in sequences:
        g = [v for v in seq if v in wanted and v not in taken]
        taken.update(g)
        if g:
            groups.append(g)
    groups.extend([v] for v in boundary if v not in taken)
    return groups


def _halves(seq: list[int]) -> list[tuple[list[int], list[int]]]:
    if len(seq) < 2:
        return []
    h = len(seq) // 2
    a, b = seq[:h], seq[h:]
    return [(a, b), (b, a)] + _halves(a) + _halves(b)


def _monge_parts(rows: list[int], cols: list[int], values: Table) -> list[MongeMatrix]:
    if any(v == INF for r in values for v in r):
        out = []
        for r, row in zip(rows, values):
            keep = [j for j, v in enumerate(row) if v != INF]
            if keep:
                out.append(MongeMatrix([r], [cols[j] for j in keep], [[row[j] for j in keep]]))
        return out
    return split_until_monge(MongeMatrix(rows, cols, values))


def monge_decomposition(
    boundary: Sequence[int], table: Table, groups: Sequence[Sequence[int]], key: int
) -> list[MongeMatrix]:
    index = {v: i for i, v in enumerate(boundary)}
    blocks: list[tuple[list[int], list[int]]] = []
    for g in groups:
        blocks.extend(_halves(list(g)))
    for a in groups:
        for b in groups:
            if a is not b:
                blocks.append((list(a), list(b)))
    out: list[MongeMatrix] = []
    for rows, cols in blocks:
        values = [[table[index[r]][index[c]] for c in cols] for r in rows]
        out.extend(_monge_parts(rows, cols, values))
    return [m.with_key((key, i)) for i, m in enumerate(out)]


@dataclass
class DenseDistanceGraph:
    key: int
    boundary: list[int]
    table: Table
    matrices: list[MongeMatrix]
    graph: ExplicitGraph | None = None
    price: dict[int, int] = field(default_factory=dict)
    paths: dict[int, ShortestPaths] = field(default_factory=dict)

    def __repr__(self) -> str:
        return f"DenseDistanceGraph(key={self.key}, boundary={len(self.boundary)}, matrices={len(self.matrices)})"

    def distance(self, u: int, v: int) -> int | float:
        i, j = self.boundary.index(u), self.boundary.index(v)
        return self.table[i][j]

    def source(self) -> MongeSource:
        return MongeSource(self.matrices, self.boundary)

    def densified(self) -> ExplicitGraph:
        """Every finite off-diagonal table entry as an explicit edge."""
        edges = [
            EdgeRef(u, v, self.table[i][j], (self.key, -1, i, j))
            for i, u in enumerate(self.boundary)
            for j, v in enumerate(self.boundary)
            if i != j and self.table[i][j] != INF
        ]
        return ExplicitGraph(self.boundary, edges)

    def _paths_from(self, u: int) -> ShortestPaths:
        if u not in self.paths:
            if self.graph is None:
                raise ValueError(f"DDG {self.key} was loaded without its piece graph")
            graph, price = self.graph, self.price
            self.paths[u] = dijkstra_cp(lambda beta: cp_explicit(graph, beta), lambda v: price.get(v, 0), u)
        return self.paths[u]

    def expand(self, edge: EdgeRef) -> list[EdgeRef]:
        """The in-piece shortest path behind a DDG edge."""
        return self._paths_from(edge.tail).path_to(edge.head)

    def row_sum(self) -> int:
        return sum(len(m.rows) + len(m.cols) for m in self.matrices)


def row_budget(boundary_size: int, group_count: int) -> int:
    """Rows plus columns allowed for a finite table: 8 b (ceil(log2 b) + groups)."""
    b = boundary_size
    return 8 * b * (math.ceil(math.log2(max(b, 2))) + group_count)


def ddg_from_table(
    key: int,
    boundary: Sequence[int],
    table: Table,
    groups: Sequence[Sequence[int]],
    graph: ExplicitGraph | None = None,
    price: Mapping[int, int] | None = None,
) -> DenseDistanceGraph:
    boundary = list(boundary)
    matrices = monge_decomposition(boundary, table, groups, key)
    if get_settings().debug_asserts and all(v != INF for row in table for v in row):
        used = sum(len(m.rows) + len(m.cols) for m in matrices)
        budget = row_budget(len(boundary), len(groups))
        if used > budget:
            raise InvariantViolation(f"DDG {key} uses {used} rows and columns, budget is {budget}")
    return DenseDistanceGraph(key, boundary, table, matrices, graph, dict(price or {}))


def build_piece_ddg(
    piece: Piece,
    weights: Sequence[int | None],
    price: Mapping[int, int],
    *,
    key: int,
    groups: Sequence[Sequence[int]] | None = None,
) -> DenseDistanceGraph:
    """Distances between the boundary vertices of ``piece`` under a feasible ``price``.

    Raises InfeasiblePrice when the price is not feasible on the piece.
    """
    graph = piece_graph(piece, weights)
    boundary = list(piece.boundary)
    paths = {
        b: dijkstra_cp(
            lambda beta: cp_explicit(graph, beta), lambda v: price.get(v, 0), b, vertices=boundary
        )
        for b in boundary
    }
    table: Table = [[paths[u].dist[v] for v in boundary] for u in boundary]
    if groups is None:
        groups = boundary_groups(boundary, hole_sequences(piece))
    ddg = ddg_from_table(key, boundary, table, groups, graph, price)
    ddg.paths = paths
    logger.debug(
        "ddg %d: |boundary|=%d, %d matrices, rows+cols %d", key, len(boundary), len(ddg.matrices), ddg.row_sum()
    )
    return ddg


def ddg_views(
    ddg: DenseDistanceGraph, price: PriceFn, threshold: PriceFn
) -> tuple[ClosestPairView, NearNeighborView]:
    source = ddg.source()
    return source.closest_pair(price), source.near_neighbor(ddg.boundary, price, threshold)


def union_ddg(ddgs: Iterable[DenseDistanceGraph]) -> MongeSource:
    """All matrices of the given DDGs as one source over the union of their boundaries."""
    ddgs = list(ddgs)
    return MongeSource(
        (m for d in ddgs for m in d.matrices), (v for d in ddgs for v in d.boundary)
    )


def negcycle_on_ddg(source: MongeSource) -> NegCycleOutcome[EdgeRef]:
    return detect_negative_cycle(source)


def expand_walk(ddgs: Mapping[int, DenseDistanceGraph], cycle: Iterable[EdgeRef]) -> list[EdgeRef]:
    """Replace DDG edges (keyed by their DDG) with piece paths; other edges pass through."""
    walk: list[EdgeRef] = []
    for e in cycle:
        owner = ddgs.get(e.key[0]) if len(e.key) == 4 else None
        walk.extend(owner.expand(e) if owner is not None else [e])
    return walk


def expand_cycle(ddgs: Mapping[int, DenseDistanceGraph], cycle: Iterable[EdgeRef]) -> tuple[EdgeRef, ...]:
    """A simple negative cycle of piece edges behind a negative DDG cycle."""
    return negative_cycle_in_walk(expand_walk(ddgs, cycle))
