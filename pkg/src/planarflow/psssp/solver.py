"""Recursive feasible prices and negative cycles for planar digraphs.

The graph is triangulated with heavy edges and split into an r-division
with r = n^(8/9). Each piece is solved recursively; the piece prices make
per-piece Dijkstra valid, which yields the dense distance graphs. A
negative cycle of their union expands into a negative cycle of the graph,
and otherwise the union's price is stitched with the piece prices into a
price of the whole graph.
"""

from __future__ import annotations

import logging
import math
from typing import Sequence

from planarflow.config import get_settings
from planarflow.ddg import (
    DenseDistanceGraph,
    build_piece_ddg,
    expand_cycle,
    negcycle_on_ddg,
    piece_graph,
    union_ddg,
)
from planarflow.errors import NegativeCycle
from planarflow.graphcore.embedding import PlanarEmbedding
from planarflow.graphcore.transforms import triangulate
from planarflow.models import NegCycleOutcome
from planarflow.paths import bellman_ford, verify_price
from planarflow.pdecomp.rdivision import RDivision, r_division
from planarflow.proximity.base import ClosestPairView, EdgeRef, PriceFn
from planarflow.proximity.compose import cp_union
from planarflow.proximity.dijkstra import dijkstra_cp
from planarflow.proximity.explicit import ExplicitGraph, cp_explicit
from planarflow.weights import check_overflow

logger = logging.getLogger(__name__)


def dart_edges(emb: PlanarEmbedding, weights: Sequence[int | None]) -> list[EdgeRef]:
    return [
        EdgeRef(emb.tail[d], emb.head[d], w, (d,))
        for d, w in enumerate(weights)
        if w is not None
    ]


def _lift(e: EdgeRef, vertex_map: Sequence[int], dart_map: Sequence[int]) -> EdgeRef:
    return EdgeRef(vertex_map[e.tail], vertex_map[e.head], e.weight, (dart_map[e.key[0]],))


def price_or_cycle(emb: PlanarEmbedding, weights: Sequence[int | None]) -> NegCycleOutcome[EdgeRef]:
    """A feasible price or a simple negative cycle of an embedded digraph.

    ``weights[d]`` is the weight of dart ``d``; None means the dart is not
    an edge. Cycle edges carry the key ``(dart,)``.
    """
    if len(weights) != emb.m:
        raise ValueError(f"expected {emb.m} dart weights, got {len(weights)}")
    price = {v: 0 for v in range(emb.n)}
    stats = {"depth": 0, "calls": 0}
    for comp in emb.components():
        darts = [d for v in comp for d in emb.rotation[v]]
        if not darts:
            continue
        local, vertex_map, dart_map = emb.restrict(darts)
        out = _solve(local, [weights[d] for d in dart_map], 0, stats)
        if out.cycle is not None:
            return NegCycleOutcome(cycle=tuple(_lift(e, vertex_map, dart_map) for e in out.cycle))
        assert out.price is not None
        for v, p in out.price.items():
            price[vertex_map[v]] = p
    verify_price(price, dart_edges(emb, weights))
    logger.info("planar price: n=%d, %d recursive calls, depth %d", emb.n, stats["calls"], stats["depth"])
    return NegCycleOutcome(price=price)


def _solve(
    emb: PlanarEmbedding, weights: Sequence[int | None], depth: int, stats: dict[str, int]
) -> NegCycleOutcome[EdgeRef]:
    stats["calls"] += 1
    stats["depth"] = max(stats["depth"], depth)
    edges = dart_edges(emb, weights)
    if emb.n <= get_settings().base_cutoff:
        return bellman_ford(range(emb.n), edges)
    c = max([2] + [-e.weight for e in edges])
    big = (emb.n + 1) * c
    check_overflow(big, get_settings().overflow_bits)
    filled = [w if w is not None else big for w in weights]
    tri = triangulate(emb, big, filled)
    t, tw = tri.embedding, tri.weights
    assert tw is not None
    r = math.ceil(emb.n ** (8 / 9))
    div = r_division(t, r)
    if len(div.pieces) < 2 or any(p.n >= t.n for p in div.pieces):
        logger.warning("no r-division progress at n=%d, falling back to Bellman-Ford", emb.n)
        return bellman_ford(range(emb.n), edges)

    prices: list[dict[int, int]] = []
    for piece in div.pieces:
        local = [tw[d] for d in piece.dart_map]
        out = _solve(piece.embedding, local, depth + 1, stats)
        if out.cycle is not None:
            return NegCycleOutcome(
                cycle=tuple(_lift(e, piece.vertex_map, piece.dart_map) for e in out.cycle)
            )
        assert out.price is not None
        prices.append({piece.vertex_map[v]: p for v, p in out.price.items()})

    ddgs = [build_piece_ddg(p, tw, prices[i], key=i) for i, p in enumerate(div.pieces)]
    outcome = negcycle_on_ddg(union_ddg(ddgs))
    if outcome.cycle is not None:
        cycle = expand_cycle({d.key: d for d in ddgs}, outcome.cycle)
        return NegCycleOutcome(cycle=cycle)
    assert outcome.price is not None
    full = stitch_prices(div, tw, prices, ddgs, outcome.price)
    return NegCycleOutcome(price={v: full[v] for v in range(emb.n)})


def stitch_prices(
    div: RDivision,
    weights: Sequence[int | None],
    prices: Sequence[dict[int, int]],
    ddgs: Sequence[DenseDistanceGraph],
    q: dict[int, int],
) -> dict[int, int]:
    """Combine piece prices and a price of the DDG union into a price of the whole graph.

    A super source gets zero-weight edges to the boundary and heavy edges
    to everything else. Its distances to the boundary come from Dijkstra on
    the DDG union; each piece then extends them to its interior with its
    own price. The result is minus those distances, verified on every edge.
    """
    parent = div.parent
    edges = dart_edges(parent, weights)
    big = (parent.n + 1) * max([2] + [abs(e.weight) for e in edges])
    s = parent.n
    boundary = div.boundary

    if boundary:
        union = union_ddg(ddgs)
        hooks = ExplicitGraph([s, *boundary], (EdgeRef(s, b, 0, (-1, b)) for b in boundary))
        price_q = dict(q)
        price_q[s] = min(q[b] for b in boundary)

        def make_union_cp(beta: PriceFn) -> ClosestPairView:
            return cp_union([union.closest_pair(beta), cp_explicit(hooks, beta)])

        first = dijkstra_cp(make_union_cp, lambda v: price_q[v], s).dist
    else:
        first = {}

    dist: dict[int, int] = {}
    for piece, p in zip(div.pieces, prices):
        graph = piece_graph(piece, weights)
        entry = {v: first.get(v, big) for v in piece.vertex_map}
        hooks = ExplicitGraph([s, *piece.vertex_map], (EdgeRef(s, v, w, (-1, v)) for v, w in entry.items()))
        local_price = dict(p)
        local_price[s] = min(w + p[v] for v, w in entry.items())

        def make_piece_cp(
            beta: PriceFn, graph: ExplicitGraph = graph, hooks: ExplicitGraph = hooks
        ) -> ClosestPairView:
            return cp_union([cp_explicit(graph, beta), cp_explicit(hooks, beta)])

        found = dijkstra_cp(make_piece_cp, lambda v, lp=local_price: lp[v], s).dist
        for v in piece.vertex_map:
            d = found[v]
            if v not in dist or d < dist[v]:
                dist[v] = d
    price = {v: -d for v, d in dist.items()}
    for v in range(parent.n):
        price.setdefault(v, 0)
    verify_price(price, edges)
    return price


def sssp(emb: PlanarEmbedding, weights: Sequence[int | None], source: int) -> list[int | float]:
    """Exact distances from ``source``; unreachable vertices get INF."""
    outcome = price_or_cycle(emb, weights)
    if outcome.cycle is not None:
        raise NegativeCycle(outcome.cycle)
    assert outcome.price is not None
    price = outcome.price
    graph = ExplicitGraph(range(emb.n), dart_edges(emb, weights))
    found = dijkstra_cp(
        lambda beta: cp_explicit(graph, beta), lambda v: price[v], source, vertices=range(emb.n)
    ).dist
    return [found[v] for v in range(emb.n)]
