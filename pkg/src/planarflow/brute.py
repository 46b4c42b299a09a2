"""Reference answers from networkx, used by the tests and the `verify` command.

Every function refuses graphs above ``brute_cap`` vertices.
"""

from __future__ import annotations

import logging
from typing import Iterable

import networkx as nx
from networkx.algorithms.flow import dinitz

from planarflow.config import get_settings
from planarflow.errors import SizeCap
from planarflow.graphcore.embedding import PlanarEmbedding
from planarflow.graphcore.network import FlowNetwork
from planarflow.proximity.base import EdgeRef
from planarflow.weights import INF

logger = logging.getLogger(__name__)


def _check_size(n: int) -> None:
    cap = get_settings().brute_cap
    if n > cap:
        raise SizeCap(f"reference oracles are limited to {cap} vertices, got {n}")


def weighted_digraph(vertices: Iterable[int], edges: Iterable[EdgeRef]) -> nx.DiGraph:
    """Parallel edges collapse to the lightest one."""
    g = nx.DiGraph()
    g.add_nodes_from(vertices)
    for e in edges:
        if not g.has_edge(e.tail, e.head) or g[e.tail][e.head]["weight"] > e.weight:
            g.add_edge(e.tail, e.head, weight=e.weight)
    _check_size(g.number_of_nodes())
    return g


def brute_has_negative_cycle(vertices: Iterable[int], edges: Iterable[EdgeRef]) -> bool:
    edges = list(edges)
    if any(e.tail == e.head and e.weight < 0 for e in edges):
        return True
    g = weighted_digraph(vertices, (e for e in edges if e.tail != e.head))
    if g.number_of_edges() == 0:
        return False
    return nx.negative_edge_cycle(g, weight="weight")


def brute_distances(vertices: Iterable[int], edges: Iterable[EdgeRef], source: int) -> dict[int, int]:
    """Bellman-Ford distances; raises nx.NetworkXUnbounded on a reachable negative cycle."""
    g = weighted_digraph(vertices, (e for e in edges if e.tail != e.head))
    return dict(nx.single_source_bellman_ford_path_length(g, source, weight="weight"))


def flow_digraph(net: FlowNetwork) -> nx.DiGraph:
    """Capacities of parallel darts add up; infinite darts carry no capacity attribute."""
    _check_size(net.n)
    g = nx.DiGraph()
    g.add_nodes_from(range(net.n))
    for e in net:
        if e.capacity == 0 or e.tail == e.head:
            continue
        if e.capacity == INF:
            g.add_edge(e.tail, e.head)
            g[e.tail][e.head].pop("capacity", None)
            g[e.tail][e.head]["infinite"] = True
            continue
        data = g.get_edge_data(e.tail, e.head)
        if data is None:
            g.add_edge(e.tail, e.head, capacity=int(e.capacity))
        elif not data.get("infinite"):
            data["capacity"] += int(e.capacity)
    return g


def brute_max_flow(net: FlowNetwork, s: int, t: int) -> int:
    """Dinitz max-flow value."""
    if s == t:
        raise ValueError("source and sink must differ")
    value = nx.maximum_flow_value(flow_digraph(net), s, t, flow_func=dinitz)
    return int(value)


def brute_min_cost_circulation(net: FlowNetwork) -> int:
    """Optimal circulation cost by network simplex."""
    _check_size(net.n)
    g = nx.MultiDiGraph()
    g.add_nodes_from(range(net.n), demand=0)
    cost = 0
    for e in net:
        if e.capacity == 0:
            continue
        if e.tail == e.head:
            if e.cost < 0:
                if e.capacity == INF:
                    raise nx.NetworkXUnbounded("negative loop of infinite capacity")
                cost += int(e.capacity) * e.cost
            continue
        if e.capacity == INF:
            g.add_edge(e.tail, e.head, weight=e.cost)
        else:
            g.add_edge(e.tail, e.head, weight=e.cost, capacity=int(e.capacity))
    total, _ = nx.network_simplex(g)
    return cost + int(total)


def ssp_circulation(net: FlowNetwork) -> tuple[int, dict[int, int]]:
    """Min-cost circulation by successive shortest paths.

    Negative darts are saturated first; the resulting excesses are then
    routed back to the deficits along residual shortest paths, found with
    networkx Bellman-Ford. Returns the cost and the flow per dart.
    """
    _check_size(net.n)
    if any(e.capacity == INF for e in net):
        raise ValueError("successive shortest paths needs finite capacities")
    cap = [int(e.capacity) for e in net]
    flow = [0] * net.m
    excess = [0] * net.n
    for d, e in enumerate(net):
        if e.cost < 0 and cap[d] > 0:
            flow[d] = cap[d]
            if e.tail != e.head:
                excess[e.head] += cap[d]
                excess[e.tail] -= cap[d]
    source, sink = net.n, net.n + 1
    rounds = 0
    while any(x > 0 for x in excess):
        rounds += 1
        g = nx.DiGraph()
        arcs: dict[tuple[int, int], tuple[int, int]] = {}   # (u, v) -> (dart, direction)

        def offer(u: int, v: int, w: int, d: int, sign: int) -> None:
            if (u, v) not in arcs or g[u][v]["weight"] > w:
                g.add_edge(u, v, weight=w)
                arcs[(u, v)] = (d, sign)

        for d, e in enumerate(net):
            if e.tail == e.head:
                continue
            if flow[d] < cap[d]:
                offer(e.tail, e.head, e.cost, d, 1)
            if flow[d] > 0:
                offer(e.head, e.tail, -e.cost, d, -1)
        for v, x in enumerate(excess):
            if x > 0:
                g.add_edge(source, v, weight=0)
            elif x < 0:
                g.add_edge(v, sink, weight=0)
        path = nx.bellman_ford_path(g, source, sink, weight="weight")
        inner = list(zip(path[1:-2], path[2:-1]))
        amount = min(excess[path[1]], -excess[path[-2]])
        for u, v in inner:
            d, sign = arcs[(u, v)]
            amount = min(amount, cap[d] - flow[d] if sign > 0 else flow[d])
        for u, v in inner:
            d, sign = arcs[(u, v)]
            flow[d] += sign * amount
        excess[path[1]] -= amount
        excess[path[-2]] += amount
    cost = sum(f * e.cost for f, e in zip(flow, net))
    logger.debug("ssp circulation: cost %d after %d augmentations", cost, rounds)
    return cost, {d: f for d, f in enumerate(flow) if f}


def brute_perfect_matching(emb: PlanarEmbedding) -> bool:
    """Whether the (bipartite) embedded graph has a perfect matching, by Hopcroft-Karp."""
    _check_size(emb.n)
    g = nx.Graph()
    g.add_nodes_from(range(emb.n))
    g.add_edges_from((emb.tail[d], emb.head[d]) for d in range(0, emb.m, 2) if emb.tail[d] != emb.head[d])
    if not nx.is_bipartite(g):
        raise ValueError("graph is not bipartite")
    matched = 0
    for comp in nx.connected_components(g):
        sub = g.subgraph(comp)
        top = {v for v, c in nx.bipartite.color(sub).items() if c == 0}
        matched += len(nx.bipartite.hopcroft_karp_matching(sub, top_nodes=top))
    return matched == emb.n
