"""Near-neighbor and closest-pair interfaces over implicit weighted digraphs.

A *source* is a weighted digraph that may be stored explicitly, as a union
of other sources, as the in/out vertex split of a source, or as Monge
matrices. Sources are immutable and hand out single-use *views*:

- a near-neighbor view answers ``query(v)`` with an edge ``v -> t`` where
  ``t`` is an active target and ``w + p(t) < tau(v)``; ``deactivate(t)``
  removes a target for good.
- a closest-pair view keeps the edge minimizing ``w + alpha(s) + beta(t)``
  over activated tails ``s`` and not yet extracted heads ``t``.

Ties are broken by the smallest edge key, then the smallest head.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import AbstractSet, Callable, Iterable, Iterator, Protocol, Sequence

PriceFn = Callable[[int], int]


@dataclass(frozen=True)
class EdgeRef:
    """Identity of one edge of a source."""

    tail: int
    head: int
    weight: int
    key: tuple[int, ...]


def rank_key(value: int, edge: EdgeRef) -> tuple[int, tuple[int, ...], int]:
    return (value, edge.key, edge.head)


class NearNeighborView(Protocol):
    vertices: AbstractSet[int]

    def query(self, v: int) -> EdgeRef | None:
        ...

    def deactivate(self, t: int) -> None:
        ...


class ClosestPairView(Protocol):
    vertices: AbstractSet[int]

    def activate(self, v: int, alpha: int) -> None:
        ...

    def extract(self, t: int) -> None:
        ...

    def minimum(self) -> tuple[int, EdgeRef] | None:
        ...


class ProximitySource(Protocol):
    """Immutable weighted digraph that can instantiate proximity views."""

    @property
    def vertices(self) -> Sequence[int]:
        ...

    def edges(self) -> Iterator[EdgeRef]:
        ...

    def near_neighbor(
        self, targets: Iterable[int], price: PriceFn, threshold: PriceFn
    ) -> NearNeighborView:
        ...

    def closest_pair(self, beta: PriceFn, targets: Iterable[int] | None = None) -> ClosestPairView:
        ...

    def scaled(self, factor: int) -> ProximitySource:
        ...

    def min_weight(self) -> int | None:
        ...
