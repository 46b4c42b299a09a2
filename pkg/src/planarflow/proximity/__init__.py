"""Proximity views: near-neighbor and closest-pair access to implicit graphs."""

from planarflow.proximity.base import (
    ClosestPairView,
    EdgeRef,
    NearNeighborView,
    PriceFn,
    ProximitySource,
    rank_key,
)
from planarflow.proximity.compose import UnionCP, UnionNN, UnionSource, cp_union, nn_union
from planarflow.proximity.dijkstra import ShortestPaths, dijkstra_cp
from planarflow.proximity.explicit import (
    ExplicitGraph,
    cp_explicit,
    cp_single_edge,
    nn_explicit,
)
from planarflow.proximity.split import SplitSource, cp_split, nn_split, v_in, v_out

__all__ = [
    "ClosestPairView",
    "EdgeRef",
    "ExplicitGraph",
    "NearNeighborView",
    "PriceFn",
    "ProximitySource",
    "ShortestPaths",
    "SplitSource",
    "UnionCP",
    "UnionNN",
    "UnionSource",
    "cp_explicit",
    "cp_single_edge",
    "cp_split",
    "cp_union",
    "dijkstra_cp",
    "nn_explicit",
    "nn_split",
    "nn_union",
    "rank_key",
    "v_in",
    "v_out",
]
