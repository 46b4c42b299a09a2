"""Union composition of proximity views and sources."""

from __future__ import annotations

import heapq
import logging
from typing import Iterable, Iterator, Sequence

from planarflow.proximity.base import (
    ClosestPairView,
    EdgeRef,
    NearNeighborView,
    PriceFn,
    ProximitySource,
)

logger = logging.getLogger(__name__)


def _owners(views: Sequence[NearNeighborView | ClosestPairView]) -> dict[int, list[int]]:
    owners: dict[int, list[int]] = {}
    for i, view in enumerate(views):
        for v in view.vertices:
            owners.setdefault(v, []).append(i)
    return owners


class UnionNN:
    """Near-neighbor view over the union of several views.

    Each vertex keeps a cursor over the views that own it. A view that
    answered "none" for ``v`` keeps doing so, so the cursor only moves
    forward.
    """

    def __init__(self, views: Sequence[NearNeighborView]) -> None:
        self._views = list(views)
        self._owners = _owners(self._views)
        self._cursor: dict[int, int] = {}
        self.vertices = frozenset(self._owners)
        self.subqueries = 0

    def query(self, v: int) -> EdgeRef | None:
        owners = self._owners.get(v)
        if not owners:
            return None
        c = self._cursor.get(v, 0)
        while c < len(owners):
            self.subqueries += 1
            e = self._views[owners[c]].query(v)
            if e is not None:
                self._cursor[v] = c
                return e
            c += 1
        self._cursor[v] = c
        return None

    def deactivate(self, t: int) -> None:
        for i in self._owners.get(t, ()):
            self._views[i].deactivate(t)


def nn_union(views: Sequence[NearNeighborView]) -> UnionNN:
    return UnionNN(views)


class UnionCP:
    """Closest-pair view over a union, keyed by each part's current minimum.

    Heap entries carry the version of their view at push time; an entry is
    live only while that version is current.
    """

    def __init__(self, views: Sequence[ClosestPairView]) -> None:
        self._views = list(views)
        self._owners = _owners(self._views)
        self.vertices = frozenset(self._owners)
        self._version = [0] * len(self._views)
        self._heap: list[tuple[int, tuple[int, ...], int, int, int, EdgeRef]] = []
        for i in range(len(self._views)):
            self._refresh(i)

    def _refresh(self, i: int) -> None:
        self._version[i] += 1
        best = self._views[i].minimum()
        if best is not None:
            value, e = best
            heapq.heappush(self._heap, (value, e.key, e.head, i, self._version[i], e))

    def activate(self, v: int, alpha: int) -> None:
        for i in self._owners.get(v, ()):
            self._views[i].activate(v, alpha)
            self._refresh(i)

    def activate_part(self, i: int, v: int, alpha: int) -> None:
        """Activate ``v`` in part ``i`` only."""
        self._views[i].activate(v, alpha)
        self._refresh(i)

    def extract(self, t: int) -> None:
        for i in self._owners.get(t, ()):
            self._views[i].extract(t)
            self._refresh(i)

    def minimum(self) -> tuple[int, EdgeRef] | None:
        heap = self._heap
        while heap and heap[0][4] != self._version[heap[0][3]]:
            heapq.heappop(heap)
        if not heap:
            return None
        return heap[0][0], heap[0][5]


def cp_union(views: Sequence[ClosestPairView]) -> UnionCP:
    return UnionCP(views)


class UnionSource:
    """A source whose edge set is the union of other sources' edge sets."""

    def __init__(self, parts: Iterable[ProximitySource]) -> None:
        self.parts: tuple[ProximitySource, ...] = tuple(parts)
        self._vertices = tuple(sorted({v for p in self.parts for v in p.vertices}))

    def __repr__(self) -> str:
        return f"UnionSource(parts={len(self.parts)}, n={len(self._vertices)})"

    @property
    def vertices(self) -> Sequence[int]:
        return self._vertices

    def edges(self) -> Iterator[EdgeRef]:
        for p in self.parts:
            yield from p.edges()

    def near_neighbor(self, targets: Iterable[int], price: PriceFn, threshold: PriceFn) -> UnionNN:
        targets = list(targets)
        return nn_union([p.near_neighbor(targets, price, threshold) for p in self.parts])

    def closest_pair(self, beta: PriceFn, targets: Iterable[int] | None = None) -> UnionCP:
        targets = None if targets is None else frozenset(targets)
        return cp_union([p.closest_pair(beta, targets) for p in self.parts])

    def scaled(self, factor: int) -> UnionSource:
        return UnionSource(p.scaled(factor) for p in self.parts)

    def min_weight(self) -> int | None:
        weights = [w for p in self.parts if (w := p.min_weight()) is not None]
        return min(weights, default=None)
