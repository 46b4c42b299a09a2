"""One refinement round: from a 2eps-optimal circulation to an eps-optimal one.

All costs are integers at the working scale and ``eps`` is even. Costs are
first reduced by the adjusted price ``p0``; the residual graph then gets
modified costs ``c'`` (``c'(e) = c(e)`` on original edges and
``c(e) + eps`` on reverses), a super source ``s`` joined to every excess
vertex, a super sink ``t`` fed by every deficit vertex, and escape edges
``s -> v`` of cost ``M`` that keep every distance finite. The main loop
alternates a Dijkstra pass from ``s`` with a blocking-flow style pass that
sends unit flow along nearly tight edges (reduced ``c'`` below ``eps/2``).
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from enum import IntEnum

from planarflow.circulation.problem import CirculationProblem, FlowState
from planarflow.config import get_settings
from planarflow.errors import InvariantViolation, NonTermination
from planarflow.models import RefineStats, TraceRecord
from planarflow.proximity.base import ClosestPairView, EdgeRef, PriceFn
from planarflow.proximity.compose import cp_union
from planarflow.proximity.dijkstra import dijkstra_cp
from planarflow.proximity.explicit import ExplicitGraph, cp_explicit
from planarflow.weights import check_overflow

logger = logging.getLogger(__name__)


class Kind(IntEnum):
    FWD = 0       # finite arc, forward
    REV = 1       # finite arc, reverse
    INF_REV = 2   # reverse of an uncapacitated edge carrying flow
    SOURCE = 3    # s -> excess vertex
    SINK = 4      # deficit vertex -> t
    ESCAPE = 5    # s -> v, cost M


def adjust_prices(price: list[int], lam_in_le_out: list[bool], eps: int) -> list[int]:
    """Lower the price of vertices with in-capacity at most out-capacity by eps, raise the rest."""
    return [p - eps if le else p + eps for p, le in zip(price, lam_in_le_out)]


def _in_le_out(problem: CirculationProblem) -> list[bool]:
    cap_in: list[float] = [0] * problem.n
    cap_out: list[float] = [0] * problem.n
    for tail, head, cap, _ in problem.arcs:
        cap_out[tail] += cap
        cap_in[head] += cap
    for e in problem.infinite_edges():
        cap_out[e.tail] = math.inf
        cap_in[e.head] = math.inf
    return [a <= b for a, b in zip(cap_in, cap_out)]


def _reduced(cost: int, tail: int, head: int, price: list[int]) -> int:
    return cost - price[tail] + price[head]


def saturate_negative(state: FlowState, problem: CirculationProblem, price: list[int]) -> int:
    """Saturate every residual edge whose reduced cost is negative.

    Uncapacitated forward edges are never negative here. Returns the total
    excess of the resulting pseudo-flow.
    """
    for i, (tail, head, cap, cost) in enumerate(problem.arcs):
        r = _reduced(cost, tail, head, price)
        if r < 0 and state.fin[i] < cap:
            state.fin[i] = cap
        elif r > 0 and state.fin[i] > 0:
            state.fin[i] = 0
    for key in list(state.inf):
        e = state.inf_edges[key]
        if _reduced(e.weight, e.tail, e.head, price) > 0:
            state.push_infinite(e, -state.inf[key])
    return state.total_excess(problem)


@dataclass
class AugResidual:
    """Residual graph with modified costs, super vertices and escape edges.

    Costs are already reduced by ``p0``. ``source_cap`` and ``sink_cap``
    are the residual capacities of the auxiliary edges and shrink as units
    are sent.
    """

    problem: CirculationProblem
    state: FlowState
    p0: list[int]
    eps: int
    source_cap: dict[int, int] = field(default_factory=dict)
    sink_cap: dict[int, int] = field(default_factory=dict)
    big_m: int = 0

    def __post_init__(self) -> None:
        for v, x in enumerate(self.state.excess(self.problem)):
            if x > 0:
                self.source_cap[v] = x
            elif x < 0:
                self.sink_cap[v] = -x
        n = self.problem.n
        bound = self.problem.max_abs_cost() + 2 * max((abs(p) for p in self.p0), default=0) + self.eps
        self.big_m = (n + 2) * bound
        check_overflow(self.big_m, get_settings().overflow_bits)

    @property
    def s_hat(self) -> int:
        return self.problem.n

    @property
    def t_hat(self) -> int:
        return self.problem.n + 1

    @property
    def total_excess(self) -> int:
        return sum(self.source_cap.values())

    def modified_cost(self, kind: Kind, idx: int | tuple[int, ...]) -> int:
        if kind in (Kind.SOURCE, Kind.SINK):
            return 0
        if kind is Kind.ESCAPE:
            return self.big_m
        if kind is Kind.INF_REV:
            e = self.state.inf_edges[idx]  # type: ignore[index]
            return -_reduced(e.weight, e.tail, e.head, self.p0) + self.eps
        tail, head, _, cost = self.problem.arcs[idx]  # type: ignore[index]
        r = _reduced(cost, tail, head, self.p0)
        return r if kind is Kind.FWD else -r + self.eps

    def darts(self) -> list[tuple[Kind, int | tuple[int, ...], int, int]]:
        """Residual non-uncapacitated edges as ``(kind, index, tail, head)``."""
        out: list[tuple[Kind, int | tuple[int, ...], int, int]] = []
        for i, (tail, head, cap, _) in enumerate(self.problem.arcs):
            f = self.state.fin[i]
            if f < cap:
                out.append((Kind.FWD, i, tail, head))
            if f > 0:
                out.append((Kind.REV, i, head, tail))
        for key in sorted(self.state.inf):
            e = self.state.inf_edges[key]
            out.append((Kind.INF_REV, key, e.head, e.tail))
        for x in sorted(self.source_cap):
            if self.source_cap[x] > 0:
                out.append((Kind.SOURCE, x, self.s_hat, x))
        for d in sorted(self.sink_cap):
            if self.sink_cap[d] > 0:
                out.append((Kind.SINK, d, d, self.t_hat))
        return out

    def is_residual(self, kind: Kind, idx: int | tuple[int, ...]) -> bool:
        if kind is Kind.FWD:
            return self.state.fin[idx] < self.problem.arcs[idx][2]  # type: ignore[index]
        if kind is Kind.REV:
            return self.state.fin[idx] > 0  # type: ignore[index]
        if kind is Kind.INF_REV:
            return self.state.inf.get(idx, 0) > 0  # type: ignore[arg-type]
        if kind is Kind.SOURCE:
            return self.source_cap.get(idx, 0) > 0  # type: ignore[arg-type]
        if kind is Kind.SINK:
            return self.sink_cap.get(idx, 0) > 0  # type: ignore[arg-type]
        return True

    def push_unit(self, kind: Kind, idx: int | tuple[int, ...] | EdgeRef) -> None:
        if isinstance(idx, EdgeRef):
            self.state.push_infinite(idx, 1)
        elif kind is Kind.FWD:
            self.state.fin[idx] += 1  # type: ignore[index]
        elif kind is Kind.REV:
            self.state.fin[idx] -= 1  # type: ignore[index]
        elif kind is Kind.INF_REV:
            self.state.push_infinite(self.state.inf_edges[idx], -1)  # type: ignore[index]
        elif kind is Kind.SOURCE:
            self.source_cap[idx] -= 1  # type: ignore[index]
        elif kind is Kind.SINK:
            self.sink_cap[idx] -= 1  # type: ignore[index]
        else:
            raise InvariantViolation("escape edges never carry flow")


def _explicit_part(aug: AugResidual) -> ExplicitGraph:
    edges = [
        EdgeRef(tail, head, aug.modified_cost(kind, idx), (-1, int(kind), *_flat(idx)))
        for kind, idx, tail, head in aug.darts()
    ]
    edges.extend(
        EdgeRef(aug.s_hat, v, aug.big_m, (-1, int(Kind.ESCAPE), v)) for v in range(aug.problem.n)
    )
    return ExplicitGraph(range(aug.problem.n + 2), edges)


def _flat(idx: int | tuple[int, ...]) -> tuple[int, ...]:
    return idx if isinstance(idx, tuple) else (idx,)


class _ReducedInfiniteCP:
    """Closest pair over uncapacitated edges with costs reduced by ``p0``."""

    def __init__(self, inner: ClosestPairView, p0: list[int]) -> None:
        self._inner = inner
        self._p0 = p0
        self.vertices = inner.vertices

    def activate(self, v: int, alpha: int) -> None:
        if v < len(self._p0):
            self._inner.activate(v, alpha - self._p0[v])

    def extract(self, t: int) -> None:
        self._inner.extract(t)

    def minimum(self) -> tuple[int, EdgeRef] | None:
        return self._inner.minimum()


def step_distances(aug: AugResidual, price: list[int]) -> dict[int, int]:
    """Exact distances from the super source in the residual graph plus escape edges."""
    explicit = _explicit_part(aug)
    infinite = aug.problem.infinite
    p0 = aug.p0

    def make_cp(beta: PriceFn) -> ClosestPairView:
        views: list[ClosestPairView] = [cp_explicit(explicit, beta)]
        if infinite is not None:
            inner = infinite.closest_pair(lambda v: beta(v) + p0[v])
            views.append(_ReducedInfiniteCP(inner, p0))
        return cp_union(views)

    paths = dijkstra_cp(make_cp, lambda v: price[v], aug.s_hat)
    return paths.dist


def step_send_flow(aug: AugResidual, price: list[int]) -> int:
    """Send unit flows along nearly tight edges until the source is dead.

    Returns the number of unit augmentations (paths and cycles).
    """
    n = aug.problem.n
    s_hat, t_hat = aug.s_hat, aug.t_hat
    half = aug.eps // 2
    stacks: dict[int, list[tuple[Kind, int | tuple[int, ...], int]]] = {}
    for kind, idx, tail, head in reversed(aug.darts()):
        if aug.modified_cost(kind, idx) - price[tail] + price[head] < half:
            stacks.setdefault(tail, []).append((kind, idx, head))
    alive = [True] * (n + 2)
    nn = None
    if aug.problem.infinite is not None:
        p0 = aug.p0
        nn = aug.problem.infinite.near_neighbor(
            range(n), lambda z: p0[z] + price[z], lambda u: price[u] + half + p0[u]
        )

    path = [s_hat]
    path_edges: list[tuple[Kind, int | tuple[int, ...] | EdgeRef]] = []
    on_path = {s_hat: 0}
    augmented = 0

    def send(edges: list[tuple[Kind, int | tuple[int, ...] | EdgeRef]]) -> None:
        for kind, idx in edges:
            aug.push_unit(kind, idx)

    while path:
        q = path[-1]
        if q == t_hat:
            send(path_edges)
            augmented += 1
            path, path_edges, on_path = [s_hat], [], {s_hat: 0}
            continue
        step: tuple[Kind, int | tuple[int, ...] | EdgeRef, int] | None = None
        stack = stacks.get(q)
        while stack:
            kind, idx, head = stack[-1]
            if alive[head] and aug.is_residual(kind, idx):
                step = (kind, idx, head)
                break
            stack.pop()
        if step is None and nn is not None and q < n:
            e = nn.query(q)
            if e is not None:
                step = (Kind.FWD, e, e.head)
        if step is None:
            alive[q] = False
            if nn is not None and q < n:
                nn.deactivate(q)
            path.pop()
            del on_path[q]
            if path_edges:
                path_edges.pop()
            continue
        kind, idx, z = step
        if z in on_path:
            k = on_path[z]
            send(path_edges[k:] + [(kind, idx)])
            augmented += 1
            for v in path[k + 1 :]:
                del on_path[v]
            del path[k + 1 :]
            del path_edges[k:]
        else:
            on_path[z] = len(path)
            path.append(z)
            path_edges.append((kind, idx))
    return augmented


def _check_four_eps(problem: CirculationProblem, state: FlowState, price: list[int], eps: int) -> None:
    for i, (tail, head, cap, cost) in enumerate(problem.arcs):
        r = _reduced(cost, tail, head, price)
        if (state.fin[i] < cap and r < -4 * eps) or (state.fin[i] > 0 and -r < -4 * eps):
            raise InvariantViolation(f"arc {i} breaks 4eps-optimality after price adjustment")
    for e in problem.infinite_edges():
        if _reduced(e.weight, e.tail, e.head, price) < 0:
            raise InvariantViolation(f"uncapacitated edge {e.tail}->{e.head} is negative after adjustment")


def refine(state: FlowState, problem: CirculationProblem, eps: int) -> RefineStats:
    """Turn the 2eps-optimal circulation in ``state`` into an eps-optimal one, in place."""
    if eps % 2:
        raise ValueError("eps must be even at the working scale")
    settings = get_settings()
    debug = settings.debug_asserts
    stats = RefineStats(eps=eps)
    p0 = adjust_prices(state.price, _in_le_out(problem), eps)
    if debug:
        _check_four_eps(problem, state, p0, eps)
    excess = saturate_negative(state, problem, p0)
    stats.saturated_excess = excess
    lam = max(problem.lambda_total, 1)
    if debug and excess > 3 * lam:
        raise InvariantViolation(f"excess {excess} after saturation exceeds 3 * Lambda = {3 * lam}")
    aug = AugResidual(problem, state, p0, eps)
    price = [0] * (problem.n + 2)
    cap = 200 * math.isqrt(lam) + 10
    prev_delta: int | None = None
    while aug.total_excess > 0:
        stats.main_loops += 1
        if stats.main_loops > cap:
            raise NonTermination(f"refine exceeded {cap} main-loop iterations at eps={eps}")
        dist = step_distances(aug, price)
        price = [-dist[v] for v in range(problem.n + 2)]
        delta = dist[aug.t_hat]
        psi = aug.total_excess
        if debug:
            if delta >= aug.big_m:
                raise InvariantViolation("no residual path from excess to deficit")
            if psi * delta > 48 * eps * lam:
                raise InvariantViolation(f"excess {psi} times distance {delta} exceeds 48 eps Lambda")
            if prev_delta is not None and delta < prev_delta + eps // 2:
                raise InvariantViolation(f"distance grew from {prev_delta} to {delta}, less than eps/2")
        prev_delta = delta
        augmented = step_send_flow(aug, price)
        stats.trace.append(TraceRecord(eps, delta, psi, augmented))
        logger.debug("refine eps=%d delta=%d excess=%d augmented=%d", eps, delta, psi, augmented)
    state.price = [p0[v] + price[v] for v in range(problem.n)]
    return stats
