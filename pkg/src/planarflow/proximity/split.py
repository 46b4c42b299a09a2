"""In/out vertex splitting of a source.

Vertex ``v`` of the base graph becomes ``v_in = 2v`` and ``v_out = 2v + 1``
and every base edge ``u -> v`` becomes ``u_out -> v_in``. The unit edges
``v_in -> v_out`` are not part of this source; callers add them
explicitly.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

from planarflow.errors import LoopEdge
from planarflow.proximity.base import EdgeRef, PriceFn, ProximitySource
from planarflow.proximity.compose import UnionCP, cp_union

logger = logging.getLogger(__name__)


def v_in(v: int) -> int:
    return 2 * v


def v_out(v: int) -> int:
    return 2 * v + 1


def _lift(e: EdgeRef) -> EdgeRef:
    return EdgeRef(v_out(e.tail), v_in(e.head), e.weight, e.key)


class SplitNN:
    """Near-neighbor view over the split graph, answered by a base view."""

    def __init__(self, base: ProximitySource, targets: Iterable[int], price: PriceFn, threshold: PriceFn) -> None:
        base_targets = [x >> 1 for x in targets if x % 2 == 0]
        self._inner = base.near_neighbor(
            base_targets, lambda v: price(v_in(v)), lambda v: threshold(v_out(v))
        )
        self.vertices = frozenset(x for v in base.vertices for x in (v_in(v), v_out(v)))

    def query(self, x: int) -> EdgeRef | None:
        if x % 2 == 0:
            return None
        e = self._inner.query(x >> 1)
        return None if e is None else _lift(e)

    def deactivate(self, x: int) -> None:
        if x % 2 == 0:
            self._inner.deactivate(x >> 1)


def _check_loop_free(base: ProximitySource) -> None:
    for e in base.edges():
        if e.tail == e.head:
            raise LoopEdge(f"base graph has a loop at vertex {e.tail}")


def nn_split(base: ProximitySource, targets: Iterable[int], price: PriceFn, threshold: PriceFn) -> SplitNN:
    _check_loop_free(base)
    return SplitNN(base, targets, price, threshold)


@dataclass(frozen=True)
class SplitLayout:
    """Price-independent part of a SplitCP.

    For bit ``b`` and side ``i`` the class ``A[b][i]`` holds the base
    vertices whose rank has bit ``b`` equal to ``i``; ``heads[2 * b + i]``
    holds the live heads outside it. Two distinct vertices differ in some
    bit, so every non-loop edge is covered.
    """

    rank: dict[int, int]
    bits: int
    heads: tuple[frozenset[int], ...]
    vertices: frozenset[int]


def split_layout(base: ProximitySource, targets: Iterable[int] | None) -> SplitLayout:
    rank = {v: i for i, v in enumerate(base.vertices)}
    bits = max(1, (len(rank) - 1).bit_length())
    live = None if targets is None else {x >> 1 for x in targets if x % 2 == 0}
    heads = tuple(
        frozenset(v for v, r in rank.items() if (r >> b) & 1 != side and (live is None or v in live))
        for b in range(bits)
        for side in (0, 1)
    )
    vertices = frozenset(x for v in base.vertices for x in (v_in(v), v_out(v)))
    return SplitLayout(rank, bits, heads, vertices)


class SplitCP:
    """Closest pair over the split graph: one base view per bit class, under the current prices."""

    def __init__(self, base: ProximitySource, beta: PriceFn, layout: SplitLayout) -> None:
        self.layout = layout
        self._rank = layout.rank
        self.bits = layout.bits
        base_beta = lambda v: beta(v_in(v))  # noqa: E731
        self._subviews = [base.closest_pair(base_beta, heads) for heads in layout.heads]
        self._union: UnionCP = cp_union(self._subviews)
        self.vertices = layout.vertices

    def activate(self, x: int, alpha: int) -> None:
        if x % 2 == 0:
            return
        v = x >> 1
        r = self._rank.get(v)
        if r is None:
            return
        for b in range(self.bits):
            self._union.activate_part(2 * b + ((r >> b) & 1), v, alpha)

    def extract(self, x: int) -> None:
        if x % 2 == 1:
            return
        self._union.extract(x >> 1)

    def minimum(self) -> tuple[int, EdgeRef] | None:
        best = self._union.minimum()
        if best is None:
            return None
        return best[0], _lift(best[1])


class SplitSource:
    """The in/out split of a loop-free base source."""

    def __init__(self, base: ProximitySource) -> None:
        _check_loop_free(base)
        self.base = base
        self._vertices = tuple(x for v in base.vertices for x in (v_in(v), v_out(v)))
        self._layouts: dict[frozenset[int] | None, SplitLayout] = {}

    def __repr__(self) -> str:
        return f"SplitSource({self.base!r})"

    @property
    def vertices(self) -> Sequence[int]:
        return self._vertices

    def edges(self) -> Iterator[EdgeRef]:
        return (_lift(e) for e in self.base.edges())

    def near_neighbor(self, targets: Iterable[int], price: PriceFn, threshold: PriceFn) -> SplitNN:
        return SplitNN(self.base, targets, price, threshold)

    def closest_pair(self, beta: PriceFn, targets: Iterable[int] | None = None) -> SplitCP:
        key = None if targets is None else frozenset(targets)
        layout = self._layouts.get(key)
        if layout is None:
            layout = self._layouts[key] = split_layout(self.base, key)
        return SplitCP(self.base, beta, layout)

    def scaled(self, factor: int) -> SplitSource:
        return SplitSource(self.base.scaled(factor))

    def min_weight(self) -> int | None:
        return self.base.min_weight()


def cp_split(base: ProximitySource, beta: PriceFn, targets: Iterable[int] | None = None) -> SplitCP:
    _check_loop_free(base)
    return SplitCP(base, beta, split_layout(base, targets))
