"""Planar prices, shortest paths, demand routing and matching."""

from __future__ import annotations

import random

import pytest

from planarflow.brute import (
    brute_distances,
    brute_has_negative_cycle,
    brute_max_flow,
    brute_perfect_matching,
)
from planarflow.config import override_settings
from planarflow.errors import NegativeCycle, NotBipartite, OverflowGuard, UnbalancedDemands
from planarflow.graphcore import FlowNetwork, PlanarEmbedding, gen_planar
from planarflow.models import InfeasibleRouting, RoutingResult
from planarflow.paths import cycle_weight, is_simple_cycle, verify_price
from planarflow.psssp import (
    bipartite_planar_matching,
    dart_edges,
    get_negcycle_solver,
    price_or_cycle,
    route_demands,
    sssp,
    two_coloring,
)
from planarflow.weights import INF
from tests.conftest import _triangle_rotation


def _weights(net: FlowNetwork) -> list[int | None]:
    return [e.cost if e.capacity != 0 else None for e in net]


def _shifted(seed: int, n: int) -> tuple[PlanarEmbedding, list[int | None]]:
    """Helper: nonnegative costs reshaped by a potential, so negative but cycle-free."""
    net, emb = gen_planar(seed, n, (1, 5), (0, 9), directed=True)
    rng = random.Random(seed)
    pot = [rng.randint(-8, 8) for _ in range(n)]
    weights = [
        e.cost + pot[e.tail] - pot[e.head] if e.capacity != 0 else None for e in net
    ]
    return emb, weights


def test_fixture_cycle(neg_triangle) -> None:
    net, emb = neg_triangle
    outcome = price_or_cycle(emb, _weights(net))
    assert outcome.has_cycle
    assert cycle_weight(outcome.cycle) == -1
    assert sorted(e.key[0] for e in outcome.cycle) == [0, 2, 4]


def test_wrong_weight_count() -> None:
    with pytest.raises(ValueError):
        price_or_cycle(PlanarEmbedding(_triangle_rotation()), [1, 2])


@pytest.mark.parametrize("seed", range(4))
def test_recursive_price_or_cycle_matches_reference(seed: int) -> None:
    net, emb = gen_planar(seed, 30, (1, 5), (-3, 10), directed=True)
    weights = _weights(net)
    edges = dart_edges(emb, weights)
    with override_settings(base_cutoff=6):
        outcome = price_or_cycle(emb, weights)
    assert outcome.has_cycle == brute_has_negative_cycle(range(emb.n), edges)
    if outcome.has_cycle:
        assert cycle_weight(outcome.cycle) < 0
        assert is_simple_cycle(outcome.cycle)
    else:
        verify_price(outcome.price, edges)



def test_triangulation_weight_past_bit_budget_raises() -> None:
    net, emb = gen_planar(0, 30, (1, 5), (-3, 10), directed=True)
    with override_settings(base_cutoff=6, overflow_bits=5), pytest.raises(OverflowGuard):
        price_or_cycle(emb, _weights(net))


@pytest.mark.parametrize("seed", range(3))
def test_recursive_price_on_cycle_free_graph(seed: int) -> None:
    emb, weights = _shifted(seed, 36)
    with override_settings(base_cutoff=8):
        outcome = price_or_cycle(emb, weights)
    assert not outcome.has_cycle
    verify_price(outcome.price, dart_edges(emb, weights))


@pytest.mark.parametrize("seed", range(3))
def test_sssp_matches_bellman_ford(seed: int) -> None:
    emb, weights = _shifted(seed, 25)
    ref = brute_distances(range(emb.n), dart_edges(emb, weights), 0)
    with override_settings(base_cutoff=8):
        dist = sssp(emb, weights, 0)
    assert dist == [ref.get(v, INF) for v in range(emb.n)]


def test_sssp_unreachable_is_inf(single_edge) -> None:
    net, emb = single_edge
    assert sssp(emb, _weights(net), 1) == [INF, 0]


def test_sssp_raises_on_negative_cycle(neg_triangle) -> None:
    net, emb = neg_triangle
    with pytest.raises(NegativeCycle) as info:
        sssp(emb, _weights(net), 0)
    assert cycle_weight(info.value.cycle) == -1


def test_route_within_capacity(square) -> None:
    net, emb = square
    result = route_demands(net, emb, [-2, 0, 2, 0])
    assert isinstance(result, RoutingResult)
    assert result.excess([e.tail for e in net], [e.head for e in net], 4) == [-2, 0, 2, 0]


def test_route_reports_cut(square) -> None:
    net, emb = square
    result = route_demands(net, emb, [-3, 0, 3, 0])
    assert isinstance(result, InfeasibleRouting)
    assert result.deficit == 1
    assert sum(net[d].capacity for d in result.cut) == 2


def test_route_input_errors(square) -> None:
    net, emb = square
    with pytest.raises(UnbalancedDemands):
        route_demands(net, emb, [1, 0, 0, 0])
    with pytest.raises(ValueError):
        route_demands(net, emb, [0, 0])


def test_route_unbalanced_component() -> None:
    net = FlowNetwork.from_arcs(4, [(0, 1, 2, 0), (2, 3, 2, 0)])
    emb = PlanarEmbedding([[0], [1], [2], [3]])
    result = route_demands(net, emb, [-1, 0, 0, 1])
    assert isinstance(result, InfeasibleRouting)
    assert result.side == [0, 1]
    assert result.deficit == 1


@pytest.mark.parametrize("seed", range(4))
def test_route_agrees_with_max_flow(seed: int) -> None:
    net, emb = gen_planar(seed, 12, (1, 3), (0, 0))
    rng = random.Random(seed)
    a, b = rng.sample(range(12), 2)
    demands = [0] * 12
    demands[a], demands[b] = -2, 2
    result = route_demands(net, emb, demands)
    assert isinstance(result, RoutingResult) == (brute_max_flow(net, a, b) >= 2)


def test_two_coloring(square) -> None:
    _, emb = square
    assert two_coloring(emb) == [0, 1, 0, 1]
    with pytest.raises(NotBipartite):
        two_coloring(PlanarEmbedding(_triangle_rotation()))


def test_square_has_perfect_matching(square) -> None:
    _, emb = square
    matching = bipartite_planar_matching(emb)
    assert matching is not None
    assert len(matching) == 2
    covered = sorted(v for d in matching for v in (emb.tail[d], emb.head[d]))
    assert covered == [0, 1, 2, 3]
    assert brute_perfect_matching(emb)


def test_odd_path_has_no_matching() -> None:
    assert bipartite_planar_matching(PlanarEmbedding([[0], [1, 2], [3]])) is None


def test_isolated_vertex_blocks_matching() -> None:
    emb = PlanarEmbedding([[0, 2], [1], [3], []])
    assert bipartite_planar_matching(emb) is None
    assert not brute_perfect_matching(emb)


@pytest.mark.parametrize("method", ["planar", "circulation"])
def test_negcycle_solver_factory(method: str, neg_triangle, square) -> None:
    solve = get_negcycle_solver(method)
    net, emb = neg_triangle
    assert cycle_weight(solve(emb, _weights(net)).cycle) == -1
    net, emb = square
    outcome = solve(emb, _weights(net))
    assert not outcome.has_cycle
    verify_price(outcome.price, dart_edges(emb, _weights(net)))


def test_unknown_negcycle_method() -> None:
    with pytest.raises(ValueError):
        get_negcycle_solver("simplex")
