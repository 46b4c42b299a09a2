"""Negative-cycle detection through min-cost circulation.

Each vertex ``v`` is split into ``v_in = 2v`` and ``v_out = 2v + 1`` joined
by a unit-capacity zero-cost arc, and every edge ``u -> v`` becomes an
uncapacitated ``u_out -> v_in`` edge of the same cost. The split network
has a negative-cost circulation exactly when the input has a negative
cycle. Solving it to within ``delta = 1 / (4n)`` either yields a negative
circulation, which decomposes into a negative cycle, or a price from which
an exact feasible price is rounded out with one Dijkstra pass.
"""

from __future__ import annotations

import logging
from fractions import Fraction

from planarflow.circulation.problem import CirculationProblem
from planarflow.circulation.scaling import CirculationResult, min_cost_circulation
from planarflow.config import get_settings
from planarflow.errors import LoopEdge, NegativeReducedWeight, NoNegativeCycleInDecomposition
from planarflow.models import NegCycleOutcome
from planarflow.paths import cycle_weight, is_simple_cycle, verify_price
from planarflow.proximity.base import ClosestPairView, EdgeRef, PriceFn, ProximitySource
from planarflow.proximity.compose import cp_union
from planarflow.proximity.dijkstra import dijkstra_cp
from planarflow.proximity.explicit import ExplicitGraph, cp_explicit
from planarflow.proximity.split import SplitSource, v_in, v_out
from planarflow.weights import check_overflow

logger = logging.getLogger(__name__)


def split_reduce(g: ProximitySource) -> CirculationProblem:
    """The vertex-split circulation instance of a loop-free source."""
    infinite = SplitSource(g)
    n = 1 + max(g.vertices, default=-1)
    arcs = [(v_in(v), v_out(v), 1, 0) for v in g.vertices]
    return CirculationProblem.from_parts(2 * n, arcs, infinite)


def _drop_loops(g: ProximitySource) -> tuple[ProximitySource, EdgeRef | None]:
    loops = [e for e in g.edges() if e.tail == e.head]
    if not loops:
        return g, None
    worst = min(loops, key=lambda e: (e.weight, e.key))
    if worst.weight < 0:
        return g, worst
    if not isinstance(g, ExplicitGraph):
        raise LoopEdge(f"source {g!r} has loops and cannot be filtered")
    return ExplicitGraph(g.vertices, (e for e in g.edges() if e.tail != e.head)), None


def extract_negative_cycle(result: CirculationResult, g: ProximitySource) -> tuple[EdgeRef, ...]:
    """Decompose the split circulation into unit cycles and return a negative one in ``g``."""
    base = {e.key: e for e in g.edges()}
    out: dict[int, list[list]] = {}
    for (tail, head, _, _), f in zip(result.problem.arcs, result.fin):
        if f:
            out.setdefault(tail, []).append([(0, tail), head, f, None])
    for key, f in sorted(result.inf.items()):
        e = base[key]
        if f > 0:
            out.setdefault(v_out(e.tail), []).append([(1, *key), v_in(e.head), f, e])
    for lst in out.values():
        lst.sort(key=lambda item: item[0])

    def next_edge(v: int) -> list | None:
        for item in out.get(v, ()):
            if item[2] > 0:
                return item
        return None

    for start in sorted(out):
        while next_edge(start) is not None:
            walk: list[list] = []
            seen = {start: 0}
            v = start
            while True:
                item = next_edge(v)
                if item is None:
                    raise NoNegativeCycleInDecomposition(f"flow is not conserved at split vertex {v}")
                walk.append(item)
                v = item[1]
                if v in seen:
                    loop = walk[seen[v]:]
                    break
                seen[v] = len(walk)
            amount = min(item[2] for item in loop)
            for item in loop:
                item[2] -= amount
            cycle = tuple(item[3] for item in loop if item[3] is not None)
            if cycle and cycle_weight(cycle) < 0:
                first = min(range(len(cycle)), key=lambda i: cycle[i].tail)
                cycle = cycle[first:] + cycle[:first]
                if not is_simple_cycle(cycle):
                    raise NoNegativeCycleInDecomposition("decomposed cycle is not simple")
                return cycle
    raise NoNegativeCycleInDecomposition("negative circulation has no negative cycle")


def recover_price(result: CirculationResult, g: ProximitySource) -> dict[int, int]:
    """Round the circulation price into an exact integral feasible price of ``g``.

    With ``p(v) = pi(v_in)`` every edge has reduced weight at least
    ``-1/n``. Shifting every edge by ``1/n`` makes Dijkstra valid, and since
    shortest paths use fewer than ``n`` edges, flooring the distances from a
    super source removes the shift exactly.
    """
    vertices = list(g.vertices)
    n = max(len(vertices), 1)
    scale = result.scale
    pi = {v: result.price[v_in(v)] for v in vertices}
    unit = scale * n
    for e in g.edges():
        if (e.weight * scale - pi[e.tail] + pi[e.head]) * n < -scale:
            raise NegativeReducedWeight(
                f"edge {e.tail}->{e.head} is below -1/n under the circulation price"
            )
    cost_bound = max([2] + [-e.weight for e in g.edges()])
    top = max((-p for p in pi.values()), default=0)
    big = max(n * cost_bound, -(-top // scale))
    check_overflow(big * unit, get_settings().overflow_bits)
    source = 1 + max(vertices, default=-1)
    price: dict[int, int] = {v: n * p for v, p in pi.items()}
    price[source] = 0
    super_edges = ExplicitGraph(
        [source, *vertices],
        (EdgeRef(source, v, big * unit - scale, (-1, v)) for v in vertices),
    )
    work = g.scaled(unit)

    def make_cp(beta: PriceFn) -> ClosestPairView:
        return cp_union([work.closest_pair(beta), cp_explicit(super_edges, beta)])

    paths = dijkstra_cp(make_cp, lambda v: price[v], source, shift=scale)
    feasible = {v: -(paths.dist[v] // unit) for v in vertices}
    verify_price(feasible, g.edges())
    return feasible


def detect_negative_cycle(g: ProximitySource) -> NegCycleOutcome[EdgeRef]:
    """A simple negative cycle of ``g`` or an exact feasible price, verified before return."""
    g, negative_loop = _drop_loops(g)
    if negative_loop is not None:
        return NegCycleOutcome(cycle=(negative_loop,))
    vertices = list(g.vertices)
    if not any(True for _ in g.edges()):
        return NegCycleOutcome(price={v: 0 for v in vertices})
    problem = split_reduce(g)
    delta = Fraction(1, 4 * max(len(vertices), 1))
    result = min_cost_circulation(problem, delta)
    logger.info(
        "negcycle n=%d Lambda=%d refines=%d cost=%d", len(vertices), problem.lambda_total,
        result.refines, result.cost,
    )
    if result.cost < 0:
        return NegCycleOutcome(cycle=extract_negative_cycle(result, g))
    return NegCycleOutcome(price=recover_price(result, g))
