"""Planar shortest paths with negative weights, demand routing and bipartite matching."""

from __future__ import annotations

from typing import Callable, Sequence

from planarflow.graphcore.embedding import PlanarEmbedding
from planarflow.models import NegCycleOutcome
from planarflow.proximity.base import EdgeRef
from planarflow.psssp.demands import bipartite_planar_matching, route_demands, two_coloring
from planarflow.psssp.solver import dart_edges, price_or_cycle, sssp, stitch_prices

NegCycleSolver = Callable[[PlanarEmbedding, Sequence[int | None]], NegCycleOutcome[EdgeRef]]


def get_negcycle_solver(method: str) -> NegCycleSolver:
    """Return a price-or-cycle solver over dart weights.

    method: "planar" (recursive separator solver) | "circulation" (vertex-split
    min-cost circulation on the dart digraph)
    """
    if method == "planar":
        return price_or_cycle
    if method == "circulation":
        from planarflow.negcycle import detect_negative_cycle
        from planarflow.proximity.explicit import ExplicitGraph

        def solve(emb: PlanarEmbedding, weights: Sequence[int | None]) -> NegCycleOutcome[EdgeRef]:
            return detect_negative_cycle(ExplicitGraph(range(emb.n), dart_edges(emb, weights)))

        return solve
    raise ValueError(f"Unknown negative-cycle method: {method}")


__all__ = [
    "NegCycleSolver",
    "bipartite_planar_matching",
    "dart_edges",
    "get_negcycle_solver",
    "price_or_cycle",
    "route_demands",
    "sssp",
    "stitch_prices",
    "two_coloring",
]
