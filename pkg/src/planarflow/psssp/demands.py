"""Routing vertex demands through a planar network, and bipartite planar matching.

A spanning-tree flow meets the demands but may break capacities. Any
correction is a circulation, and planar circulations are differences of
face potentials. The potentials that keep every dart within capacity are
exactly the feasible prices of the dual with dart weights ``u(d) - g(d)``,
so one planar price computation either repairs the tree flow or returns a
negative dual cycle, which is a cut the demands cannot cross.
"""

from __future__ import annotations

import logging
from collections import deque
from typing import Sequence

from planarflow.errors import InvariantViolation, NotACut, NotBipartite, UnbalancedDemands
from planarflow.graphcore.embedding import PlanarEmbedding
from planarflow.graphcore.network import Edge, FlowNetwork
from planarflow.models import InfeasibleRouting, RoutingResult
from planarflow.proximity.base import EdgeRef
from planarflow.psssp.solver import price_or_cycle
from planarflow.weights import INF

logger = logging.getLogger(__name__)


def _tree_flow(emb: PlanarEmbedding, demands: Sequence[int]) -> list[int]:
    parent = [-2] * emb.n
    parent[0] = -1
    order = [0]
    queue = deque([0])
    while queue:
        v = queue.popleft()
        for d in emb.rotation[v]:
            w = emb.head[d]
            if parent[w] == -2:
                parent[w] = d
                order.append(w)
                queue.append(w)
    sub = list(demands)
    for v in reversed(order[1:]):
        sub[emb.tail[parent[v]]] += sub[v]
    g = [0] * emb.m
    for v in order[1:]:
        d = parent[v]
        g[d] += sub[v]
        g[d ^ 1] -= sub[v]
    return g


def _certify(
    emb: PlanarEmbedding,
    caps: Sequence[int | float],
    demands: Sequence[int],
    cycle: Sequence[EdgeRef],
) -> tuple[list[int], list[int], int]:
    cut_slots = {e.key[0] >> 1 for e in cycle}
    start = emb.tail[cycle[0].key[0]]
    side = {start}
    queue = deque([start])
    while queue:
        v = queue.popleft()
        for d in emb.rotation[v]:
            w = emb.head[d]
            if d >> 1 not in cut_slots and w not in side:
                side.add(w)
                queue.append(w)
    need = sum(demands[v] for v in side)
    entering = [d for d in range(emb.m) if emb.head[d] in side and emb.tail[d] not in side]
    leaving = [d ^ 1 for d in entering]
    in_cap = sum((caps[d] for d in entering), 0)
    out_cap = sum((caps[d] for d in leaving), 0)
    if need - in_cap > 0:
        return sorted(side), [d for d in entering if caps[d] > 0], int(need - in_cap)
    if -need - out_cap > 0:
        return sorted(side), [d for d in leaving if caps[d] > 0], int(-need - out_cap)
    raise NotACut(f"negative dual cycle of {len(cycle)} edges does not certify infeasibility")


def route_demands(
    net: FlowNetwork, emb: PlanarEmbedding, demands: Sequence[int]
) -> RoutingResult | InfeasibleRouting:
    """A flow with excess ``demands[v]`` at every vertex, or a cut proving none exists.

    Excess is inflow minus outflow. Flow on dart ``d`` stays within
    ``net[d].capacity``.
    """
    if len(demands) != net.n:
        raise ValueError(f"expected {net.n} demands, got {len(demands)}")
    if sum(demands) != 0:
        raise UnbalancedDemands(f"demands sum to {sum(demands)}, not 0")
    flow: dict[int, int] = {}
    for comp in emb.components():
        total = sum(demands[v] for v in comp)
        if total:
            logger.info("component of vertex %d has unbalanced demand %d", comp[0], total)
            return InfeasibleRouting(comp, [], abs(total))
        darts = [d for v in comp for d in emb.rotation[v]]
        if not darts:
            continue
        local, vertex_map, dart_map = emb.restrict(darts)
        local_dem = [demands[v] for v in vertex_map]
        caps = [net[d].capacity for d in dart_map]
        g = _tree_flow(local, local_dem)
        weights: list[int | None] = [
            None if caps[d] == INF else int(caps[d]) - g[d] for d in range(local.m)
        ]
        outcome = price_or_cycle(local.dual(), weights)
        if outcome.cycle is not None:
            side, cut, deficit = _certify(local, caps, local_dem, outcome.cycle)
            logger.info("demands infeasible: cut of %d darts short by %d", len(cut), deficit)
            return InfeasibleRouting(
                [vertex_map[v] for v in side], [dart_map[d] for d in cut], deficit
            )
        assert outcome.price is not None
        p = outcome.price
        for k in range(local.slots):
            x = g[2 * k] - p[local.face_of[2 * k + 1]] + p[local.face_of[2 * k]]
            if x > 0:
                flow[dart_map[2 * k]] = x
            elif x < 0:
                flow[dart_map[2 * k + 1]] = -x
    result = RoutingResult(flow)
    _verify(net, demands, result)
    return result


def _verify(net: FlowNetwork, demands: Sequence[int], result: RoutingResult) -> None:
    for d, f in result.flow.items():
        if not 0 <= f <= net[d].capacity:
            raise InvariantViolation(f"dart {d} carries {f} over capacity {net[d].capacity}")
    tails = [e.tail for e in net]
    heads = [e.head for e in net]
    if result.excess(tails, heads, net.n) != list(demands):
        raise InvariantViolation("routed flow does not meet the demands")


def two_coloring(emb: PlanarEmbedding) -> list[int]:
    color = [-1] * emb.n
    for s in range(emb.n):
        if color[s] != -1:
            continue
        color[s] = 0
        queue = deque([s])
        while queue:
            v = queue.popleft()
            for d in emb.rotation[v]:
                w = emb.head[d]
                if color[w] == -1:
                    color[w] = 1 - color[v]
                    queue.append(w)
                elif color[w] == color[v]:
                    raise NotBipartite(f"edge {d} joins two vertices of the same side")
    return color


def bipartite_planar_matching(emb: PlanarEmbedding) -> list[int] | None:
    """Darts of a perfect matching, each leading from side 0 to side 1, or None."""
    color = two_coloring(emb)
    if 2 * color.count(0) != emb.n:
        return None
    edges = [
        Edge(emb.tail[d], emb.head[d], 1 if color[emb.tail[d]] == 0 else 0, 0) for d in range(emb.m)
    ]
    net = FlowNetwork(emb.n, edges)
    demands = [-1 if c == 0 else 1 for c in color]
    result = route_demands(net, emb, demands)
    if isinstance(result, InfeasibleRouting):
        return None
    matching = sorted(d for d, f in result.flow.items() if f > 0)
    logger.info("perfect matching with %d edges", len(matching))
    return matching
