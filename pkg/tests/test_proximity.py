"""Near-neighbor and closest-pair views, unions, vertex splitting and Dijkstra."""

from __future__ import annotations

import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from planarflow.brute import brute_distances
from planarflow.errors import InfeasiblePrice, LoopEdge
from planarflow.paths import bellman_ford
from planarflow.proximity import (
    EdgeRef,
    ExplicitGraph,
    SplitSource,
    UnionSource,
    cp_explicit,
    cp_single_edge,
    cp_split,
    dijkstra_cp,
    nn_explicit,
    nn_split,
    v_in,
    v_out,
)
from planarflow.weights import INF
from tests.conftest import _edges


def _random_graph(seed: int, n: int, m: int, lo: int = -3, hi: int = 9) -> ExplicitGraph:
    rng = random.Random(seed)
    arcs = []
    for _ in range(m):
        u, v = rng.sample(range(n), 2)
        arcs.append((u, v, rng.randint(lo, hi)))
    return ExplicitGraph(range(n), _edges(arcs))


def _scan_min(graph: ExplicitGraph, alpha: dict[int, int], beta, live: set[int]) -> int | None:
    values = [e.weight + alpha[e.tail] + beta(e.head) for e in graph.edges() if e.tail in alpha and e.head in live]
    return min(values, default=None)


def test_nn_explicit_threshold_and_deactivate() -> None:
    g = ExplicitGraph(range(3), _edges([(0, 1, 5), (0, 2, 1)]))
    view = nn_explicit(g, [1, 2], lambda v: 0, lambda v: 3)
    e = view.query(0)
    assert e is not None and e.head == 2
    view.deactivate(2)
    assert view.query(0) is None
    assert view.query(1) is None


def test_cp_explicit_activation_and_extraction() -> None:
    g = ExplicitGraph(range(3), _edges([(0, 1, 5), (0, 2, 1), (1, 2, 0)]))
    view = cp_explicit(g, lambda v: 0)
    assert view.minimum() is None
    view.activate(0, 0)
    assert view.minimum() == (1, g.out[0][1])
    view.extract(2)
    value, e = view.minimum()
    assert (value, e.head) == (5, 1)
    view.activate(1, -10)
    assert view.minimum()[0] == 5


def test_cp_explicit_respects_target_set() -> None:
    g = ExplicitGraph(range(3), _edges([(0, 1, 5), (0, 2, 1)]))
    view = cp_explicit(g, lambda v: 0, targets=[1])
    view.activate(0, 0)
    assert view.minimum()[1].head == 1


def test_single_edge_view() -> None:
    e = EdgeRef(0, 1, 4, (0,))
    view = cp_single_edge(e, lambda v: 10)
    assert view.minimum() is None
    view.activate(0, 1)
    assert view.minimum() == (15, e)
    view.extract(1)
    assert view.minimum() is None


def test_union_closest_pair_matches_whole_graph() -> None:
    whole = _random_graph(3, 12, 40)
    edges = list(whole.edges())
    parts = [ExplicitGraph(range(12), edges[i::3]) for i in range(3)]
    beta = lambda v: (v * 7) % 5  # noqa: E731
    union = UnionSource(parts).closest_pair(beta)
    single = whole.closest_pair(beta)
    alpha: dict[int, int] = {}
    live = set(range(12))
    rng = random.Random(0)
    for step in range(30):
        if step % 2 == 0:
            v = rng.randrange(12)
            a = rng.randint(-5, 5)
            if v not in alpha:
                alpha[v] = a
                union.activate(v, a)
                single.activate(v, a)
        else:
            t = rng.randrange(12)
            live.discard(t)
            union.extract(t)
            single.extract(t)
        expected = _scan_min(whole, alpha, beta, live)
        got = union.minimum()
        assert (got[0] if got else None) == expected
        other = single.minimum()
        assert (other[0] if other else None) == expected


def test_union_near_neighbor_matches_whole_graph() -> None:
    whole = _random_graph(8, 10, 30, 0, 9)
    edges = list(whole.edges())
    parts = [ExplicitGraph(range(10), edges[:15]), ExplicitGraph(range(10), edges[15:])]
    price = lambda v: v % 3  # noqa: E731
    threshold = lambda v: 6  # noqa: E731
    view = UnionSource(parts).near_neighbor(range(10), price, threshold)
    for v in range(10):
        e = view.query(v)
        candidates = [x for x in whole.out[v] if x.weight + price(x.head) < 6]
        assert (e is None) == (not candidates)
        if e is not None:
            assert e.weight + price(e.head) < 6


def test_split_source_lifts_edges() -> None:
    g = ExplicitGraph(range(3), _edges([(0, 1, 2), (1, 2, -1)]))
    split = SplitSource(g)
    lifted = sorted((e.tail, e.head, e.weight) for e in split.edges())
    assert lifted == [(v_out(0), v_in(1), 2), (v_out(1), v_in(2), -1)]
    assert len(split.vertices) == 6


def test_split_rejects_loops() -> None:
    g = ExplicitGraph(range(2), _edges([(0, 0, 1), (0, 1, 1)]))
    with pytest.raises(LoopEdge):
        SplitSource(g)
    with pytest.raises(LoopEdge):
        cp_split(g, lambda v: 0)
    with pytest.raises(LoopEdge):
        nn_split(g, [], lambda v: 0, lambda v: 0)


def test_split_closest_pair_matches_scan() -> None:
    base = _random_graph(11, 9, 25)
    split = SplitSource(base)
    beta = lambda x: x % 4  # noqa: E731
    view = cp_split(base, beta)
    whole = ExplicitGraph(split.vertices, split.edges())
    alpha: dict[int, int] = {}
    live = set(split.vertices)
    for v in range(9):
        alpha[v_out(v)] = -v
        view.activate(v_out(v), -v)
        if v % 3 == 0:
            live.discard(v_in(v))
            view.extract(v_in(v))
        got = view.minimum()
        assert (got[0] if got else None) == _scan_min(whole, alpha, beta, live)


def test_split_near_neighbor_answers_out_copies_only() -> None:
    base = ExplicitGraph(range(2), _edges([(0, 1, 1)]))
    view = SplitSource(base).near_neighbor([v_in(1)], lambda x: 0, lambda x: 5)
    assert view.query(v_in(0)) is None
    e = view.query(v_out(0))
    assert e is not None and (e.tail, e.head) == (v_out(0), v_in(1))


@settings(max_examples=30, deadline=None)
@given(seed=st.integers(0, 10_000), n=st.integers(2, 14))
def test_dijkstra_with_feasible_price_matches_bellman_ford(seed: int, n: int) -> None:
    g = _random_graph(seed, n, 3 * n, 0, 12)
    # shift weights by a potential so some become negative but no negative cycle appears
    pot = {v: random.Random(seed + v).randint(-6, 6) for v in range(n)}
    g = ExplicitGraph(range(n), (EdgeRef(e.tail, e.head, e.weight + pot[e.tail] - pot[e.head], e.key) for e in g.edges()))
    outcome = bellman_ford(range(n), list(g.edges()))
    assert outcome.price is not None
    price = outcome.price
    paths = dijkstra_cp(lambda beta: cp_explicit(g, beta), lambda v: price[v], 0)
    assert paths.dist == brute_distances(range(n), g.edges(), 0)
    for v in paths.dist:
        assert sum(e.weight for e in paths.path_to(v)) == paths.dist[v]


def test_dijkstra_detects_infeasible_price() -> None:
    g = ExplicitGraph(range(3), _edges([(0, 1, 5), (0, 2, 1), (2, 1, -10)]))
    with pytest.raises(InfeasiblePrice):
        dijkstra_cp(lambda beta: cp_explicit(g, beta), lambda v: 0, 0)


def test_path_to_unreachable_vertex() -> None:
    g = ExplicitGraph(range(3), _edges([(0, 1, 1)]))
    paths = dijkstra_cp(lambda beta: cp_explicit(g, beta), lambda v: 0, 0, vertices=g.vertices)
    assert paths.dist == {0: 0, 1: 1, 2: INF}
    with pytest.raises(KeyError):
        paths.path_to(2)


def test_unlisted_unreachable_vertices_are_absent() -> None:
    g = ExplicitGraph(range(3), _edges([(0, 1, 1)]))
    paths = dijkstra_cp(lambda beta: cp_explicit(g, beta), lambda v: 0, 0)
    assert paths.dist == {0: 0, 1: 1}


def test_split_views_share_layout_across_prices() -> None:
    base = _random_graph(4, 9, 20, 0, 9)
    split = SplitSource(base)
    first = split.closest_pair(lambda x: 0)
    second = split.closest_pair(lambda x: x)
    assert second.layout is first.layout
    fresh = cp_split(base, lambda x: x)
    for view in (second, fresh):
        view.activate(v_out(0), 0)
    assert second.minimum() == fresh.minimum()
