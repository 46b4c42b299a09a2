"""Explicitly stored graphs and their trivial proximity views."""

from __future__ import annotations

import heapq
import itertools
import logging
from typing import Iterable, Iterator, Sequence

from planarflow.proximity.base import EdgeRef, PriceFn

logger = logging.getLogger(__name__)


class ExplicitGraph:
    """Adjacency lists of EdgeRefs, each list sorted by edge key."""

    def __init__(self, vertices: Iterable[int], edges: Iterable[EdgeRef]) -> None:
        edge_list = list(edges)
        verts = set(vertices)
        for e in edge_list:
            verts.add(e.tail)
            verts.add(e.head)
        self._vertices = tuple(sorted(verts))
        self.out: dict[int, list[EdgeRef]] = {v: [] for v in self._vertices}
        for e in edge_list:
            self.out[e.tail].append(e)
        for lst in self.out.values():
            lst.sort(key=lambda e: (e.key, e.head))
        self._m = len(edge_list)

    @classmethod
    def from_arcs(
        cls, arcs: Iterable[tuple[int, int, int, int]], vertices: Iterable[int] = ()
    ) -> ExplicitGraph:
        """From ``(edge_id, tail, head, weight)`` tuples."""
        return cls(vertices, (EdgeRef(t, h, w, (i,)) for i, t, h, w in arcs))

    def __repr__(self) -> str:
        return f"ExplicitGraph(n={len(self._vertices)}, m={self._m})"

    @property
    def vertices(self) -> Sequence[int]:
        return self._vertices

    def edges(self) -> Iterator[EdgeRef]:
        for lst in self.out.values():
            yield from lst

    def near_neighbor(
        self, targets: Iterable[int], price: PriceFn, threshold: PriceFn
    ) -> ExplicitNN:
        return nn_explicit(self, targets, price, threshold)

    def closest_pair(self, beta: PriceFn, targets: Iterable[int] | None = None) -> ExplicitCP:
        return cp_explicit(self, beta, targets)

    def scaled(self, factor: int) -> ExplicitGraph:
        return ExplicitGraph(
            self._vertices,
            (EdgeRef(e.tail, e.head, e.weight * factor, e.key) for e in self.edges()),
        )

    def min_weight(self) -> int | None:
        return min((e.weight for e in self.edges()), default=None)


class ExplicitNN:
    """Pointer-advancing near-neighbor view; O(m + n) total over its lifetime."""

    def __init__(self, graph: ExplicitGraph, targets: Iterable[int], price: PriceFn, threshold: PriceFn) -> None:
        self._graph = graph
        self.vertices = frozenset(graph.vertices)
        self._active = set(targets) & self.vertices
        self._price = price
        self._threshold = threshold
        self._ptr: dict[int, int] = {}

    def query(self, v: int) -> EdgeRef | None:
        lst = self._graph.out.get(v)
        if not lst:
            return None
        i = self._ptr.get(v, 0)
        tau = self._threshold(v)
        while i < len(lst):
            e = lst[i]
            if e.head in self._active and e.weight + self._price(e.head) < tau:
                self._ptr[v] = i
                return e
            i += 1
        self._ptr[v] = i
        return None

    def deactivate(self, t: int) -> None:
        self._active.discard(t)


def nn_explicit(
    graph: ExplicitGraph, targets: Iterable[int], price: PriceFn, threshold: PriceFn
) -> ExplicitNN:
    return ExplicitNN(graph, targets, price, threshold)


class ExplicitCP:
    """Closest pair over an explicit graph with a lazily cleaned heap."""

    def __init__(self, graph: ExplicitGraph, beta: PriceFn, targets: Iterable[int] | None) -> None:
        self._graph = graph
        self.vertices = frozenset(graph.vertices)
        self._beta = beta
        self._targets = set(self.vertices if targets is None else set(targets) & self.vertices)
        self._sources: set[int] = set()
        self._heap: list[tuple[int, tuple[int, ...], int, int, EdgeRef]] = []
        self._seq = itertools.count()

    def activate(self, v: int, alpha: int) -> None:
        if v not in self.vertices or v in self._sources:
            return
        self._sources.add(v)
        for e in self._graph.out[v]:
            if e.head in self._targets:
                heapq.heappush(self._heap, (e.weight + alpha + self._beta(e.head), e.key, e.head, next(self._seq), e))

    def extract(self, t: int) -> None:
        self._targets.discard(t)

    def minimum(self) -> tuple[int, EdgeRef] | None:
        heap = self._heap
        while heap and heap[0][2] not in self._targets:
            heapq.heappop(heap)
        if not heap:
            return None
        return heap[0][0], heap[0][4]


def cp_explicit(graph: ExplicitGraph, beta: PriceFn, targets: Iterable[int] | None = None) -> ExplicitCP:
    return ExplicitCP(graph, beta, targets)


class SingleEdgeCP:
    """Closest pair over a one-edge graph."""

    def __init__(self, edge: EdgeRef, beta: PriceFn, targets: Iterable[int] | None = None) -> None:
        self.edge = edge
        self.vertices = frozenset((edge.tail, edge.head))
        self._beta = beta
        self._alpha: int | None = None
        self._live = targets is None or edge.head in set(targets)

    def activate(self, v: int, alpha: int) -> None:
        if v == self.edge.tail and self._alpha is None:
            self._alpha = alpha

    def extract(self, t: int) -> None:
        if t == self.edge.head:
            self._live = False

    def minimum(self) -> tuple[int, EdgeRef] | None:
        if self._alpha is None or not self._live:
            return None
        return self.edge.weight + self._alpha + self._beta(self.edge.head), self.edge


def cp_single_edge(edge: EdgeRef, beta: PriceFn, targets: Iterable[int] | None = None) -> SingleEdgeCP:
    return SingleEdgeCP(edge, beta, targets)
