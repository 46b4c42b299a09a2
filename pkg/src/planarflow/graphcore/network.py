"""Flow networks with paired darts.

Edge ids come in slots: ``2k`` and ``2k + 1`` are mutual reverses, so
``rev(e) == e ^ 1``. A network built from plain arcs stores each arc at the
even id and a capacity-0, cost-negated reverse at the odd id. Networks read
from files may give both darts of a slot positive capacity (antiparallel
edges sharing one embedded position).
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

from planarflow.weights import INF, is_finite

logger = logging.getLogger(__name__)

Arc = tuple[int, int, "int | float", int]


@dataclass(frozen=True)
class Edge:
    tail: int
    head: int
    capacity: int | float   # nonnegative int or INF
    cost: int


def rev(e: int) -> int:
    return e ^ 1


class FlowNetwork:
    """Immutable directed network over vertices ``0..n-1``."""

    def __init__(self, n: int, edges: Sequence[Edge]) -> None:
        if len(edges) % 2:
            raise ValueError("edge list must hold whole slots (even length)")
        for k in range(0, len(edges), 2):
            a, b = edges[k], edges[k + 1]
            if a.tail != b.head or a.head != b.tail:
                raise ValueError(f"edges {k} and {k + 1} are not reverses of each other")
        for i, e in enumerate(edges):
            if not (0 <= e.tail < n and 0 <= e.head < n):
                raise ValueError(f"edge {i} has an endpoint outside 0..{n - 1}")
            if e.capacity != INF and (e.capacity < 0 or int(e.capacity) != e.capacity):
                raise ValueError(f"edge {i} has invalid capacity {e.capacity!r}")
        self.n = n
        self.edges: tuple[Edge, ...] = tuple(edges)

    @classmethod
    def from_arcs(cls, n: int, arcs: Iterable[Arc]) -> FlowNetwork:
        """Build a network whose odd darts are capacity-0 reverses."""
        edges: list[Edge] = []
        for tail, head, cap, cost in arcs:
            edges.append(Edge(tail, head, cap, cost))
            edges.append(Edge(head, tail, 0, -cost))
        return cls(n, edges)

    @property
    def m(self) -> int:
        return len(self.edges)

    def __len__(self) -> int:
        return len(self.edges)

    def __iter__(self) -> Iterator[Edge]:
        return iter(self.edges)

    def __getitem__(self, e: int) -> Edge:
        return self.edges[e]

    def __eq__(self, other: object) -> bool:
        return isinstance(other, FlowNetwork) and self.n == other.n and self.edges == other.edges

    def __hash__(self) -> int:
        return hash((self.n, self.edges))

    def __repr__(self) -> str:
        return f"FlowNetwork(n={self.n}, m={self.m})"

    def positive_darts(self) -> list[int]:
        """Darts with positive capacity, the edge set E0 of a circulation."""
        return [i for i, e in enumerate(self.edges) if e.capacity != 0]

    def digraph(self) -> list[tuple[int, int, int, int]]:
        """``(dart, tail, head, cost)`` for darts with positive capacity."""
        return [(i, e.tail, e.head, e.cost) for i, e in enumerate(self.edges) if e.capacity != 0]

    def cost_bound(self) -> int:
        """C = max(2, max -cost) over darts with positive capacity."""
        return max([2] + [-e.cost for e in self.edges if e.capacity != 0])

    def out_capacity(self, v: int) -> int | float:
        return sum((e.capacity for e in self.edges if e.tail == v), 0)

    def total_finite_capacity(self) -> int:
        return sum(int(e.capacity) for e in self.edges if is_finite(e.capacity))

    def with_capacity(self, e: int, capacity: int | float) -> FlowNetwork:
        edges = list(self.edges)
        edges[e] = Edge(edges[e].tail, edges[e].head, capacity, edges[e].cost)
        return FlowNetwork(self.n, edges)

    def with_costs(self, costs: Sequence[int]) -> FlowNetwork:
        return FlowNetwork(
            self.n, [Edge(e.tail, e.head, e.capacity, c) for e, c in zip(self.edges, costs)]
        )


def add_reverse_edges(net: FlowNetwork | Sequence[Arc], n: int | None = None) -> FlowNetwork:
    """Give every arc a co-embedded capacity-0 reverse.

    Arc ``i`` becomes dart ``2i`` and its reverse dart ``2i + 1``. A
    FlowNetwork already carries its reverses and is returned unchanged.
    """
    if isinstance(net, FlowNetwork):
        return net
    arcs = list(net)
    if n is None:
        n = 1 + max((max(a[0], a[1]) for a in arcs), default=-1)
    return FlowNetwork.from_arcs(n, arcs)
