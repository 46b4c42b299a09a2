"""Cost-scaling driver for min-cost circulation."""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from fractions import Fraction

from planarflow.circulation.problem import CirculationProblem, FlowState
from planarflow.circulation.refine import refine
from planarflow.config import get_settings
from planarflow.errors import InvariantViolation
from planarflow.models import RefineStats, TraceRecord
from planarflow.weights import check_overflow

logger = logging.getLogger(__name__)


@dataclass
class CirculationResult:
    """An integral circulation and a price at the working scale.

    ``price`` is scaled by ``scale``: for every residual edge,
    ``cost * scale - price[u] + price[v] >= -eps``.
    """

    problem: CirculationProblem
    fin: list[int]
    inf: dict[tuple[int, ...], int]
    price: list[int]
    scale: int
    eps: int
    refines: int
    stats: list[RefineStats] = field(default_factory=list)

    @property
    def cost(self) -> int:
        total = sum(f * c for (_, _, _, c), f in zip(self.problem.arcs, self.fin))
        if self.inf:
            weights = {e.key: e.weight for e in self.problem.infinite_edges()}
            total += sum(f * weights[key] for key, f in self.inf.items())
        return total

    @property
    def trace(self) -> list[TraceRecord]:
        return [r for s in self.stats for r in s.trace]

    @property
    def main_loops(self) -> list[int]:
        return [s.main_loops for s in self.stats]

    @property
    def total_flow(self) -> int:
        return sum(abs(f) for f in self.fin) + sum(abs(f) for f in self.inf.values())

    def dart_flow(self) -> dict[int, int]:
        """Net flow per source dart id, for problems built from a network."""
        out: dict[int, int] = {}
        for i, f in zip(self.problem.arc_ids, self.fin):
            if i >= 0 and f:
                out[i] = out.get(i, 0) + f
        for key, f in self.inf.items():
            out[key[0]] = out.get(key[0], 0) + f
        return out

    def price_fraction(self, v: int) -> Fraction:
        return Fraction(self.price[v], self.scale)


def refine_count(lambda_total: int, cost_bound: int, delta: Fraction) -> int:
    """Smallest K >= 0 with C / 2**K <= delta / (2 * Lambda)."""
    k = 0
    while delta * (1 << k) < 2 * max(lambda_total, 1) * cost_bound:
        k += 1
    return k


def _verify(problem: CirculationProblem, state: FlowState, eps: int) -> None:
    p = state.price
    for i, (tail, head, cap, cost) in enumerate(problem.arcs):
        r = cost - p[tail] + p[head]
        if state.fin[i] < cap and r < -eps or state.fin[i] > 0 and -r < -eps:
            raise InvariantViolation(f"arc {i} is not eps-optimal in the final circulation")
    for e in problem.infinite_edges():
        r = e.weight - p[e.tail] + p[e.head]
        if r < -eps or (state.inf.get(e.key, 0) > 0 and -r < -eps):
            raise InvariantViolation(f"edge {e.tail}->{e.head} is not eps-optimal in the final circulation")
    if any(state.excess(problem)):
        raise InvariantViolation("final flow is not a circulation")


def min_cost_circulation(
    problem: CirculationProblem, delta: Fraction | int = 1
) -> CirculationResult:
    """Integral circulation whose cost is within ``delta`` of the optimum.

    Runs refines at eps = C/2, C/4, ... down to the first eps at most
    delta / (2 Lambda), on costs multiplied by ``2**(K + 1)``.
    """
    delta = Fraction(delta)
    if delta <= 0:
        raise ValueError("delta must be positive")
    settings = get_settings()
    c = problem.cost_bound()
    k = refine_count(problem.lambda_total, c, delta)
    scale = 1 << (k + 1)
    bound = (problem.n + 2) * (problem.max_abs_cost() + 2 * c) * scale * 4 * max(problem.n, 1)
    check_overflow(bound, settings.overflow_bits)
    work = problem.scaled(scale)
    state = FlowState.zero(work)
    eps = c * scale
    stats: list[RefineStats] = []
    for _ in range(k):
        eps //= 2
        stats.append(refine(state, work, eps))
    _verify(work, state, eps)
    result = CirculationResult(problem, state.fin, dict(state.inf), state.price, scale, eps, k, stats)
    if settings.debug_asserts and result.total_flow > 2 * problem.lambda_total:
        raise InvariantViolation(f"total flow {result.total_flow} exceeds 2 Lambda = {2 * problem.lambda_total}")
    logger.info(
        "circulation n=%d m_fin=%d Lambda=%d refines=%d main_loops=%d",
        problem.n, problem.m_fin, problem.lambda_total, k, sum(s.main_loops for s in stats),
    )
    return result
