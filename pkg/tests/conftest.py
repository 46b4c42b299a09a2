"""Shared fixtures for tests."""

from __future__ import annotations

from pathlib import Path

import pytest

from planarflow.config import override_settings
from planarflow.graphcore import FlowNetwork, PlanarEmbedding, read_graph
from planarflow.proximity import EdgeRef

FIXTURES = Path(__file__).parent / "fixtures"

Graph = tuple[FlowNetwork, PlanarEmbedding]


def _load_fixture(name: str) -> Graph:
    """Helper: read ``tests/fixtures/<name>.graph``."""
    return read_graph(FIXTURES / f"{name}.graph")


def _triangle_rotation() -> list[list[int]]:
    """Helper: slots 0->1, 1->2, 2->0 as darts (0,1), (2,3), (4,5)."""
    return [[0, 5], [1, 2], [3, 4]]


def _edges(arcs: list[tuple[int, int, int]]) -> list[EdgeRef]:
    """Helper: ``(tail, head, weight)`` triples keyed by position."""
    return [EdgeRef(t, h, w, (i,)) for i, (t, h, w) in enumerate(arcs)]


@pytest.fixture()
def single_edge() -> Graph:
    return _load_fixture("single_edge")


@pytest.fixture()
def neg_triangle() -> Graph:
    return _load_fixture("neg_triangle")


@pytest.fixture()
def two_cycle() -> Graph:
    return _load_fixture("two_cycle")


@pytest.fixture()
def square() -> Graph:
    return _load_fixture("square")


@pytest.fixture()
def debug_asserts():
    """Run the test with internal certificate checks switched on."""
    with override_settings(debug_asserts=True) as settings:
        yield settings
