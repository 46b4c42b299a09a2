"""Result and record types shared across the solvers, the oracle and the CLI."""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Generic, TypeVar

E = TypeVar("E")


class OracleMode(Enum):
    STATIC = "static"
    DYNAMIC = "dynamic"


class SeparatorCriterion(Enum):
    VERTICES = "vertices"
    BOUNDARY = "boundary"
    HOLES = "holes"


@dataclass(frozen=True)
class NegCycleOutcome(Generic[E]):
    """Either a simple negative cycle or a feasible price, never both."""

    cycle: tuple[E, ...] | None = None
    price: dict[int, int] | None = None

    def __post_init__(self) -> None:
        if (self.cycle is None) == (self.price is None):
            raise ValueError("exactly one of cycle and price must be set")

    @property
    def has_cycle(self) -> bool:
        return self.cycle is not None


@dataclass(frozen=True)
class TraceRecord:
    eps: int            # at the working scale
    delta: int          # excess-to-deficit distance, at the working scale
    excess: int         # total excess
    augmented: int      # unit augmentations in the send-flow step


@dataclass
class RefineStats:
    eps: int
    main_loops: int = 0
    saturated_excess: int = 0
    trace: list[TraceRecord] = field(default_factory=list)


@dataclass(frozen=True)
class FaceRef:
    """A natural face of a decomposition node, optionally tagged as the split face of an ancestor."""

    vertex: int
    origin: int | None = None


class ElementKind(Enum):
    EDGE = "edge"
    LEAF = "leaf"
    NODE = "node"


@dataclass(frozen=True)
class PhiElement:
    kind: ElementKind
    node: int | None = None
    x: FaceRef | None = None
    y: FaceRef | None = None
    dart: int | None = None


@dataclass
class RoutingResult:
    flow: dict[int, int]            # dart -> units, nonzero entries only

    def excess(self, tail: list[int], head: list[int], n: int) -> list[int]:
        out = [0] * n
        for d, f in self.flow.items():
            out[head[d]] += f
            out[tail[d]] -= f
        return out


@dataclass
class InfeasibleRouting:
    """A vertex set whose demand cannot cross its cut."""

    side: list[int]
    cut: list[int]                  # darts crossing in the overloaded direction
    deficit: int
