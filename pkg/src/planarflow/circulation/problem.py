"""Circulation instances, per-vertex capacity statistics and flow state."""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from planarflow.errors import InfiniteLambda
from planarflow.graphcore.network import FlowNetwork
from planarflow.proximity.base import EdgeRef, ProximitySource
from planarflow.proximity.explicit import ExplicitGraph
from planarflow.weights import INF, is_finite

logger = logging.getLogger(__name__)

# (tail, head, capacity, cost) with a finite positive capacity
FiniteArc = tuple[int, int, int, int]


def _lambda(
    n: int, arcs: Iterable[tuple[int, int, int | float]], infinite: Iterable[EdgeRef]
) -> tuple[list[int], int]:
    cap_in: list[int | float] = [0] * n
    cap_out: list[int | float] = [0] * n
    for tail, head, cap in arcs:
        cap_out[tail] += cap
        cap_in[head] += cap
    for e in infinite:
        cap_out[e.tail] = INF
        cap_in[e.head] = INF
    lam: list[int] = []
    for v in range(n):
        low = min(cap_in[v], cap_out[v])
        if not is_finite(low):
            raise InfiniteLambda(f"vertex {v} has infinite capacity on both sides")
        lam.append(int(low))
    return lam, sum(lam)


def lambda_stats(net: FlowNetwork) -> tuple[list[int], int]:
    """``lambda_v = min(in-capacity, out-capacity)`` per vertex and their sum."""
    return _lambda(net.n, ((e.tail, e.head, e.capacity) for e in net if e.capacity != 0), ())


@dataclass
class CirculationProblem:
    """Finite-capacity arcs plus an uncapacitated part given as a proximity source.

    ``arc_ids`` maps each finite arc back to the dart it came from, or -1.
    """

    n: int
    arcs: list[FiniteArc]
    infinite: ProximitySource | None = None
    arc_ids: list[int] = field(default_factory=list)
    lam: list[int] = field(init=False)
    lambda_total: int = field(init=False)

    def __post_init__(self) -> None:
        inf_edges = list(self.infinite.edges()) if self.infinite is not None else []
        self.lam, self.lambda_total = _lambda(
            self.n, ((t, h, c) for t, h, c, _ in self.arcs), inf_edges
        )
        if not self.arc_ids:
            self.arc_ids = [-1] * len(self.arcs)

    @classmethod
    def from_network(cls, net: FlowNetwork) -> CirculationProblem:
        """Finite darts become arcs; infinite darts form an explicit uncapacitated part."""
        arcs: list[FiniteArc] = []
        ids: list[int] = []
        inf_arcs: list[tuple[int, int, int, int]] = []
        for i, e in enumerate(net):
            if e.capacity == 0:
                continue
            if is_finite(e.capacity):
                arcs.append((e.tail, e.head, int(e.capacity), e.cost))
                ids.append(i)
            else:
                inf_arcs.append((i, e.tail, e.head, e.cost))
        infinite = ExplicitGraph.from_arcs(inf_arcs, range(net.n)) if inf_arcs else None
        return cls(net.n, arcs, infinite, ids)

    @classmethod
    def from_parts(
        cls, n: int, arcs: Sequence[FiniteArc], infinite: ProximitySource | None
    ) -> CirculationProblem:
        return cls(n, list(arcs), infinite)

    def __repr__(self) -> str:
        return f"CirculationProblem(n={self.n}, m_fin={self.m_fin}, Lambda={self.lambda_total})"

    @property
    def m_fin(self) -> int:
        return len(self.arcs)

    def infinite_edges(self) -> list[EdgeRef]:
        return list(self.infinite.edges()) if self.infinite is not None else []

    def cost_bound(self) -> int:
        """C with every residual cost of the zero flow at least -C."""
        worst = [2] + [-c for _, _, _, c in self.arcs]
        if self.infinite is not None:
            low = self.infinite.min_weight()
            if low is not None:
                worst.append(-low)
        return max(worst)

    def max_abs_cost(self) -> int:
        costs = [abs(c) for _, _, _, c in self.arcs]
        costs.extend(abs(e.weight) for e in self.infinite_edges())
        return max(costs, default=0)

    def scaled(self, factor: int) -> CirculationProblem:
        arcs = [(t, h, cap, c * factor) for t, h, cap, c in self.arcs]
        infinite = self.infinite.scaled(factor) if self.infinite is not None else None
        return CirculationProblem(self.n, arcs, infinite, list(self.arc_ids))


@dataclass
class FlowState:
    """Integral flow on finite arcs and on uncapacitated edges, plus a price."""

    fin: list[int]
    price: list[int]
    inf: dict[tuple[int, ...], int] = field(default_factory=dict)
    inf_edges: dict[tuple[int, ...], EdgeRef] = field(default_factory=dict)

    @classmethod
    def zero(cls, problem: CirculationProblem) -> FlowState:
        return cls([0] * problem.m_fin, [0] * problem.n)

    def push_infinite(self, e: EdgeRef, amount: int) -> None:
        self.inf_edges.setdefault(e.key, e)
        flow = self.inf.get(e.key, 0) + amount
        if flow:
            self.inf[e.key] = flow
        else:
            self.inf.pop(e.key, None)

    def excess(self, problem: CirculationProblem) -> list[int]:
        exc = [0] * problem.n
        for (tail, head, _, _), f in zip(problem.arcs, self.fin):
            exc[tail] -= f
            exc[head] += f
        for key, f in self.inf.items():
            e = self.inf_edges[key]
            exc[e.tail] -= f
            exc[e.head] += f
        return exc

    def total_excess(self, problem: CirculationProblem) -> int:
        return sum(x for x in self.excess(problem) if x > 0)

    def flow_volume(self) -> int:
        return sum(self.fin) + sum(self.inf.values())
