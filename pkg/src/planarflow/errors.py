"""Error hierarchy for planarflow.

Two kinds of failure live here. Ordinary errors describe bad input or an
outcome the caller asked to be raised (a negative cycle during SSSP, an
unroutable demand set). ``InvariantViolation`` subclasses signal that an
internal certificate check failed, which means a bug rather than bad input.
"""

from __future__ import annotations

from typing import Any


class PlanarflowError(Exception):
    """Base class for every error raised by planarflow."""


class InvariantViolation(PlanarflowError, RuntimeError):
    """Raised when an internal certificate or invariant check fails."""


class ParseError(PlanarflowError):
    """Raised when a graph or index file cannot be parsed."""

    def __init__(self, message: str, line: int | None = None) -> None:
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class NonPlanar(PlanarflowError):
    """Raised when a rotation system fails the Euler check."""


class MalformedRotation(PlanarflowError):
    """Raised when rotation lists are inconsistent with the dart pairing."""


class LoopEdge(PlanarflowError):
    """Raised when a vertex-split view is asked to cover a self-loop."""


class InfeasiblePrice(InvariantViolation):
    """Raised when Dijkstra meets a negative reduced weight."""


class InfiniteLambda(PlanarflowError):
    """Raised when some vertex has infinite capacity on both sides."""


class OverflowGuard(PlanarflowError):
    """Raised when scaled weights would exceed the configured bit budget."""


class NonTermination(InvariantViolation):
    """Raised when a loop exceeds its proven iteration bound."""


class NoNegativeCycleInDecomposition(InvariantViolation):
    """Raised when a negative-cost circulation decomposes into no negative cycle."""


class NegativeReducedWeight(InvariantViolation):
    """Raised when a returned price leaves an edge with negative reduced weight."""


class TooSmall(PlanarflowError):
    """Raised when a graph is too small to separate."""


class FaceNotInPiece(PlanarflowError):
    """Raised when a path endpoint face does not belong to the piece."""


class UnbalancedDemands(PlanarflowError):
    """Raised when vertex demands do not sum to zero."""


class NotBipartite(PlanarflowError):
    """Raised when a matching instance has an odd cycle."""


class NegativeCycle(PlanarflowError):
    """Raised by SSSP when the graph has a negative cycle."""

    def __init__(self, cycle: tuple[Any, ...]) -> None:
        self.cycle = cycle
        super().__init__(f"negative cycle through {len(cycle)} edges")


class NotACut(InvariantViolation):
    """Raised when a reported cut fails verification."""


class StaticIndex(PlanarflowError):
    """Raised when a static oracle index is asked to update."""


class SizeCap(PlanarflowError):
    """Raised when a brute-force oracle is called on an oversized graph."""
