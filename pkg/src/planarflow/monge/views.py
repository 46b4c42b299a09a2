"""Proximity views and sources backed by Monge matrices."""

from __future__ import annotations

import logging
from typing import Iterable, Iterator, Sequence

from planarflow.monge.colmin import EnvelopeColMin
from planarflow.monge.heap import MongeHeap
from planarflow.monge.matrix import MongeMatrix
from planarflow.proximity.base import EdgeRef, PriceFn
from planarflow.proximity.compose import UnionCP, UnionNN, cp_union, nn_union
from planarflow.weights import INF

logger = logging.getLogger(__name__)

# matrices that can yield an edge, each with its live column indices (None: all)
Layout = list[tuple[MongeMatrix, list[int] | None]]


def _edge(m: MongeMatrix, i: int, j: int) -> EdgeRef:
    return EdgeRef(m.rows[i], m.cols[j], m.values[i][j], (*m.key, i, j))


class MongeNN:
    """Near neighbor over one matrix: the row minimum of ``M + price`` against ``tau``."""

    def __init__(self, m: MongeMatrix, targets: Iterable[int], price: PriceFn, threshold: PriceFn) -> None:
        self.matrix = m
        self.vertices = m.labels
        self._row_of = m.row_index
        self._col_of = m.col_index
        offsets = [price(t) for t in m.cols]
        values = m.values
        self._colmin = EnvelopeColMin(len(m.rows), len(m.cols), lambda i, j: values[i][j] + offsets[j])
        live = set(targets)
        for j, t in enumerate(m.cols):
            if t not in live:
                self._colmin.deactivate(j)
        self._threshold = threshold

    def query(self, v: int) -> EdgeRef | None:
        i = self._row_of.get(v)
        if i is None:
            return None
        best = self._colmin.row_min(i)
        if best is None:
            return None
        j, value = best
        if value == INF or not value < self._threshold(v):
            return None
        return _edge(self.matrix, i, j)

    def deactivate(self, t: int) -> None:
        j = self._col_of.get(t)
        if j is not None:
            self._colmin.deactivate(j)


def monge_nn(m: MongeMatrix, targets: Iterable[int], price: PriceFn, threshold: PriceFn) -> MongeNN:
    return MongeNN(m, targets, price, threshold)


class MongeCP:
    """Closest pair over one matrix, backed by a MongeHeap."""

    def __init__(
        self,
        m: MongeMatrix,
        beta: PriceFn,
        targets: Iterable[int] | None = None,
        *,
        active: Sequence[int] | None = None,
    ) -> None:
        """``active`` lists live column indices and takes precedence over ``targets``."""
        self.matrix = m
        self.vertices = m.labels
        self._row_of = m.row_index
        self._col_of = m.col_index
        if active is None and targets is not None:
            live = set(targets)
            active = [j for j, t in enumerate(m.cols) if t in live]
        self.heap = MongeHeap(
            len(m.rows), len(m.cols), m.entry, [beta(t) for t in m.cols], active
        )

    def activate(self, v: int, alpha: int) -> None:
        i = self._row_of.get(v)
        if i is not None:
            self.heap.activate_row(i, alpha)

    def extract(self, t: int) -> None:
        j = self._col_of.get(t)
        if j is not None:
            self.heap.extract_col(j)

    def minimum(self) -> tuple[int, EdgeRef] | None:
        best = self.heap.current_min()
        if best is None:
            return None
        value, i, j = best
        if value == INF:
            return None
        return int(value), _edge(self.matrix, i, j)


def monge_cp(m: MongeMatrix, beta: PriceFn, targets: Iterable[int] | None = None) -> MongeCP:
    return MongeCP(m, beta, targets)


class MongeSource:
    """Weighted digraph given as the union of Monge matrices."""

    def __init__(self, matrices: Iterable[MongeMatrix], vertices: Iterable[int] = ()) -> None:
        self.matrices: tuple[MongeMatrix, ...] = tuple(matrices)
        verts = set(vertices)
        for m in self.matrices:
            verts.update(m.rows)
            verts.update(m.cols)
        self._vertices = tuple(sorted(verts))
        self._layouts: dict[frozenset[int] | None, Layout] = {}

    def __repr__(self) -> str:
        return f"MongeSource(matrices={len(self.matrices)}, n={len(self._vertices)})"

    @property
    def vertices(self) -> Sequence[int]:
        return self._vertices

    def edges(self) -> Iterator[EdgeRef]:
        for m in self.matrices:
            for i in range(len(m.rows)):
                for j in range(len(m.cols)):
                    if m.values[i][j] != INF:
                        yield _edge(m, i, j)

    def near_neighbor(self, targets: Iterable[int], price: PriceFn, threshold: PriceFn) -> UnionNN:
        targets = list(targets)
        return nn_union([monge_nn(m, targets, price, threshold) for m in self.matrices])

    def layout(self, targets: Iterable[int] | None) -> Layout:
        """Matrices that can yield an edge, with their live column indices.

        Cached per target set, so repeated views under changing prices only
        rebuild the price-dependent heaps.
        """
        key = targets if targets is None or isinstance(targets, frozenset) else frozenset(targets)
        cached = self._layouts.get(key)
        if cached is None:
            cached = []
            for m in self.matrices:
                active = None if key is None else [j for j, t in enumerate(m.cols) if t in key]
                if m.rows and (m.cols if active is None else active):
                    cached.append((m, active))
            self._layouts[key] = cached
            logger.debug("monge layout: %d of %d matrices live", len(cached), len(self.matrices))
        return cached

    def closest_pair(self, beta: PriceFn, targets: Iterable[int] | None = None) -> UnionCP:
        return cp_union([MongeCP(m, beta, active=active) for m, active in self.layout(targets)])

    def scaled(self, factor: int) -> MongeSource:
        return MongeSource((m.scaled(factor) for m in self.matrices), self._vertices)

    def min_weight(self) -> int | None:
        return min((e.weight for e in self.edges()), default=None)
