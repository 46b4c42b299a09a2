"""Bellman-Ford over explicit edge lists, with negative-cycle extraction."""

from __future__ import annotations

import logging
from typing import Iterable, Sequence

from planarflow.errors import NegativeReducedWeight
from planarflow.models import NegCycleOutcome
from planarflow.proximity.base import EdgeRef

logger = logging.getLogger(__name__)


def bellman_ford(vertices: Iterable[int], edges: Sequence[EdgeRef]) -> NegCycleOutcome[EdgeRef]:
    """Feasible price or negative cycle, from a virtual source joined to every vertex.

    The price is minus the distance from the virtual source, so it is
    integral and never positive.
    """
    dist = {v: 0 for v in vertices}
    for e in edges:
        dist.setdefault(e.tail, 0)
        dist.setdefault(e.head, 0)
    parent: dict[int, EdgeRef] = {}
    changed: int | None = None
    for _ in range(len(dist)):
        changed = None
        for e in edges:
            cand = dist[e.tail] + e.weight
            if cand < dist[e.head]:
                dist[e.head] = cand
                parent[e.head] = e
                changed = e.head
        if changed is None:
            break
    if changed is None:
        return NegCycleOutcome(price={v: -d for v, d in dist.items()})
    return NegCycleOutcome(cycle=_walk_back(changed, parent, len(dist)))


def _walk_back(v: int, parent: dict[int, EdgeRef], n: int) -> tuple[EdgeRef, ...]:
    for _ in range(n):
        v = parent[v].tail
    cycle = [parent[v]]
    u = parent[v].tail
    while u != v:
        cycle.append(parent[u])
        u = parent[u].tail
    cycle.reverse()
    return tuple(cycle)


def cycle_weight(cycle: Sequence[EdgeRef]) -> int:
    return sum(e.weight for e in cycle)


def is_simple_cycle(cycle: Sequence[EdgeRef]) -> bool:
    if not cycle:
        return False
    tails = [e.tail for e in cycle]
    closed = all(cycle[i].head == cycle[(i + 1) % len(cycle)].tail for i in range(len(cycle)))
    return closed and len(set(tails)) == len(tails)


def simple_cycles_of_walk(walk: Sequence[EdgeRef]) -> list[tuple[EdgeRef, ...]]:
    """Cut a closed walk into simple cycles whose weights add up to the walk's."""
    path: list[EdgeRef] = []
    index: dict[int, int] = {}
    cycles: list[tuple[EdgeRef, ...]] = []
    for e in walk:
        index[e.tail] = len(path)
        path.append(e)
        i = index.get(e.head)
        if i is not None:
            cycle = tuple(path[i:])
            del path[i:]
            for c in cycle:
                index.pop(c.tail, None)
            cycles.append(cycle)
    if path:
        raise ValueError("walk is not closed")
    return cycles


def negative_cycle_in_walk(walk: Sequence[EdgeRef]) -> tuple[EdgeRef, ...]:
    """A simple negative cycle inside a closed walk of negative weight."""
    cycles = simple_cycles_of_walk(walk)
    best = min(cycles, key=cycle_weight, default=None)
    if best is None or cycle_weight(best) >= 0:
        raise ValueError("walk has no negative cycle")
    return best


def verify_price(price: dict[int, int], edges: Iterable[EdgeRef]) -> None:
    """Raise NegativeReducedWeight unless every edge has a nonnegative reduced weight."""
    for e in edges:
        if e.weight - price.get(e.tail, 0) + price.get(e.head, 0) < 0:
            raise NegativeReducedWeight(
                f"edge {e.tail}->{e.head} (weight {e.weight}) is negative under the price"
            )
