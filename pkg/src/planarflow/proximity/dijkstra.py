"""Dijkstra driven by a closest-pair view and a feasible price."""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Callable, Iterable

from planarflow.errors import InfeasiblePrice
from planarflow.proximity.base import ClosestPairView, EdgeRef, PriceFn
from planarflow.weights import INF

logger = logging.getLogger(__name__)

CPFactory = Callable[[PriceFn], ClosestPairView]


@dataclass
class ShortestPaths:
    source: int
    dist: dict[int, int | float]
    parent: dict[int, EdgeRef] = field(default_factory=dict)
    order: list[int] = field(default_factory=list)

    def path_to(self, v: int) -> list[EdgeRef]:
        """Edges of the shortest-path tree from the source to ``v``."""
        if self.dist.get(v, INF) == INF:
            raise KeyError(f"vertex {v} is unreachable from {self.source}")
        path: list[EdgeRef] = []
        while v != self.source:
            e = self.parent[v]
            path.append(e)
            v = e.tail
        path.reverse()
        return path


def dijkstra_cp(
    make_cp: CPFactory,
    price: PriceFn,
    source: int,
    *,
    shift: int = 0,
    vertices: Iterable[int] | None = None,
) -> ShortestPaths:
    """Single-source distances using a closest-pair view.

    ``make_cp(beta)`` must return a fresh view whose live heads are all
    vertices and whose head weights are ``beta``. With ``beta = price`` and
    tail weights ``D(a) - price(a) + shift``, the view minimum is the
    reduced tentative distance of the next vertex to settle. ``shift`` is
    added to every edge weight. Vertices of ``vertices`` that the source
    cannot reach get INF in ``dist``; other unreachable vertices are absent.
    """
    cp = make_cp(price)
    p_source = price(source)
    reduced = {source: 0}
    order = [source]
    parent: dict[int, EdgeRef] = {}
    cp.extract(source)
    cp.activate(source, -p_source + shift)
    last = 0
    while True:
        best = cp.minimum()
        if best is None:
            break
        value, e = best
        v = e.head
        if value < last:
            raise InfeasiblePrice(
                f"edge {e.tail}->{v} has negative reduced weight (key {value} after {last})"
            )
        last = value
        reduced[v] = value
        parent[v] = e
        order.append(v)
        cp.extract(v)
        cp.activate(v, value - price(v) + shift)
    dist: dict[int, int | float] = {v: d - price(v) + p_source for v, d in reduced.items()}
    for v in vertices or ():
        dist.setdefault(v, INF)
    return ShortestPaths(source, dist, parent, order)
