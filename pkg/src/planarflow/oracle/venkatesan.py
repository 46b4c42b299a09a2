"""Dual weights for the flow-value test.

An s,t-flow of value λ exists exactly when the dual, with dart ``d``
weighted ``u(d)``, has no negative cycle after every dart of a fixed
s -> t path Q loses λ and every reverse of a Q dart gains λ. Dual dart
``d`` crosses primal dart ``d``, so the weights are indexed by primal dart.
"""

from __future__ import annotations

import logging
from collections import deque
from typing import Collection, Iterable, Sequence, overload

from planarflow.graphcore.embedding import PlanarEmbedding
from planarflow.graphcore.network import FlowNetwork
from planarflow.weights import INF

logger = logging.getLogger(__name__)


def dual_weights(net: FlowNetwork, infinite: Collection[int] = ()) -> list[int | None]:
    """Capacities as dual dart weights; None marks an infinite dart."""
    return [
        None if e.capacity == INF or d in infinite else int(e.capacity)
        for d, e in enumerate(net.edges)
    ]


class ShiftedWeights(Sequence[int | None]):
    """``base`` with every dart of ``path`` lowered by ``lam`` and every reverse raised by it."""

    def __init__(self, base: Sequence[int | None], path: Iterable[int], lam: int) -> None:
        self.base = base
        self.delta: dict[int, int] = {}
        for d in path:
            self.delta[d] = self.delta.get(d, 0) - lam
            self.delta[d ^ 1] = self.delta.get(d ^ 1, 0) + lam

    def __len__(self) -> int:
        return len(self.base)

    @overload
    def __getitem__(self, d: int) -> int | None: ...

    @overload
    def __getitem__(self, d: slice) -> list[int | None]: ...

    def __getitem__(self, d: int | slice) -> int | None | list[int | None]:
        if isinstance(d, slice):
            return [self[i] for i in range(*d.indices(len(self)))]
        w = self.base[d]
        if w is None:
            return None
        return w + self.delta.get(d, 0)


def st_path(emb: PlanarEmbedding, s: int, t: int) -> list[int] | None:
    """Darts of a shortest-hop s -> t path of the embedding, ignoring capacities."""
    parent: dict[int, int] = {s: -1}
    queue = deque([s])
    while queue and t not in parent:
        v = queue.popleft()
        for d in emb.rotation[v]:
            w = emb.head[d]
            if w not in parent:
                parent[w] = d
                queue.append(w)
    if t not in parent:
        return None
    path: list[int] = []
    v = t
    while v != s:
        d = parent[v]
        path.append(d)
        v = emb.tail[d]
    path.reverse()
    return path


def venkatesan_shift(
    net: FlowNetwork, emb: PlanarEmbedding, path: Sequence[int], lam: int
) -> tuple[PlanarEmbedding, list[int | None]]:
    """The dual embedding and its λ-shifted dart weights for the primal path ``path``."""
    if len(net) != emb.m:
        raise ValueError(f"network has {len(net)} darts, embedding has {emb.m}")
    weights = list(ShiftedWeights(dual_weights(net), path, lam))
    logger.debug("shifted %d path darts by %d", len(path), lam)
    return emb.dual(), weights
