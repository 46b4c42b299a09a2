"""Approximate max-flow values from a geometric grid of feasibility indexes."""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from fractions import Fraction

from planarflow.graphcore.embedding import PlanarEmbedding
from planarflow.graphcore.network import FlowNetwork
from planarflow.oracle.index import OracleIndex, build_feasible, prepare
from planarflow.oracle.query import query_feasible
from planarflow.weights import INF

logger = logging.getLogger(__name__)


def lambda_grid(eps: Fraction, bound: int) -> list[int]:
    """Distinct values ⌈(1+eps)^j⌉ for j = 0, 1, ... up to the first one reaching ``bound``."""
    grid = [1]
    power = Fraction(1)
    while grid[-1] < bound:
        power *= 1 + eps
        value = math.ceil(power)
        if value != grid[-1]:
            grid.append(value)
    return grid


def flow_bound(net: FlowNetwork) -> int:
    """Largest finite capacity leaving a single vertex."""
    out = [0] * net.n
    for e in net:
        if e.capacity != INF and e.tail != e.head:
            out[e.tail] += int(e.capacity)
    return max(out, default=0)


@dataclass
class ApproxOracle:
    eps: Fraction
    grid: list[int]
    indexes: list[OracleIndex]

    def __repr__(self) -> str:
        return f"ApproxOracle(eps={self.eps}, levels={len(self.grid)}, top={self.grid[-1]})"


def build_approx(
    net: FlowNetwork, emb: PlanarEmbedding, eps: Fraction | float | str, *, leaf_cutoff: int | None = None
) -> ApproxOracle:
    """One static index per grid value; all share one decomposition."""
    eps = eps if isinstance(eps, Fraction) else Fraction(str(eps))
    if not 0 < eps < 1:
        raise ValueError(f"eps must lie in (0, 1), got {eps}")
    grid = lambda_grid(eps, max(1, flow_bound(net)))
    prepared = prepare(net, emb, leaf_cutoff=leaf_cutoff)
    indexes = [build_feasible(net, emb, lam, prepared=prepared) for lam in grid]
    logger.info("approximate oracle eps=%s: %d levels up to %d", eps, len(grid), grid[-1])
    return ApproxOracle(eps, grid, indexes)


def query_approx(oracle: ApproxOracle, s: int, t: int) -> int:
    """The largest grid value not above the max s,t-flow, or 0 if even 1 is too much."""
    lo, hi = -1, len(oracle.grid) - 1
    probes = 0
    while lo < hi:
        mid = (lo + hi + 1) // 2
        probes += 1
        if query_feasible(oracle.indexes[mid], s, t):
            lo = mid
        else:
            hi = mid - 1
    value = oracle.grid[lo] if lo >= 0 else 0
    logger.debug("approximate flow %d -> %d: %d after %d probes", s, t, value, probes)
    return value
