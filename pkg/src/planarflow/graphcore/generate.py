"""Seeded generators for embedded test graphs."""

from __future__ import annotations

import logging
import math
import random

from planarflow.graphcore.embedding import PlanarEmbedding
from planarflow.graphcore.network import Edge, FlowNetwork

logger = logging.getLogger(__name__)


def _grid_arcs(n: int, rng: random.Random) -> tuple[int, list[tuple[int, int]], list[tuple[int, int]]]:
    rows = max(2, math.isqrt(n))
    cols = math.ceil(n / rows)
    pos = [(i // cols, i % cols) for i in range(n)]

    def vid(r: int, c: int) -> int | None:
        i = r * cols + c
        return i if 0 <= c < cols and 0 <= r and i < n else None

    pairs: list[tuple[int, int]] = []
    for i, (r, c) in enumerate(pos):
        right = vid(r, c + 1)
        down = vid(r + 1, c)
        if right is not None:
            pairs.append((i, right))
        if down is not None:
            pairs.append((i, down))
        diag = vid(r + 1, c + 1)
        if right is not None and down is not None:
            if diag is None:
                pairs.append((right, down))
            elif rng.random() < 0.5:
                pairs.append((i, diag))
            else:
                pairs.append((right, down))
    return cols, pairs, pos


def gen_planar(
    seed: int,
    n: int,
    cap_range: tuple[int, int] = (1, 10),
    cost_range: tuple[int, int] = (-10, 10),
    *,
    directed: bool = False,
) -> tuple[FlowNetwork, PlanarEmbedding]:
    """Triangulated grid on ``n`` vertices with a random diagonal per cell.

    Vertices are laid out row-major on a grid with at least two rows; a
    partial last row is allowed. Each slot gets independent random
    capacities and costs in both directions, unless ``directed`` is set, in
    which case the odd dart is a capacity-0 reverse with negated cost.
    """
    if n < 3:
        raise ValueError("gen_planar needs n >= 3")
    rng = random.Random(seed)
    _, pairs, pos = _grid_arcs(n, rng)
    edges: list[Edge] = []
    around: list[list[tuple[float, int]]] = [[] for _ in range(n)]
    for u, v in pairs:
        d = len(edges)
        cap = rng.randint(*cap_range)
        cost = rng.randint(*cost_range)
        if directed:
            back_cap, back_cost = 0, -cost
        else:
            back_cap, back_cost = rng.randint(*cap_range), rng.randint(*cost_range)
        edges.append(Edge(u, v, cap, cost))
        edges.append(Edge(v, u, back_cap, back_cost))
        (ru, cu), (rv, cv) = pos[u], pos[v]
        around[u].append((math.atan2(ru - rv, cv - cu), d))
        around[v].append((math.atan2(rv - ru, cu - cv), d + 1))
    # clockwise = decreasing angle
    rotation = [[d for _, d in sorted(a, key=lambda t: -t[0])] for a in around]
    emb = PlanarEmbedding(rotation)
    logger.debug("gen_planar seed=%d n=%d: %d slots, %d faces", seed, n, len(pairs), len(emb.faces))
    return FlowNetwork(n, edges), emb
