"""Cost-scaling min-cost circulation."""

from __future__ import annotations

import math
from fractions import Fraction

import pytest

from planarflow.brute import brute_min_cost_circulation, ssp_circulation
from planarflow.circulation import (
    CirculationProblem,
    FlowState,
    adjust_prices,
    lambda_stats,
    min_cost_circulation,
    refine_count,
    saturate_negative,
)
from planarflow.circulation.refine import AugResidual
from planarflow.config import override_settings
from planarflow.errors import InfiniteLambda, OverflowGuard
from planarflow.graphcore import FlowNetwork, gen_planar
from planarflow.weights import INF


def test_lambda_of_unit_triangle() -> None:
    net = FlowNetwork.from_arcs(3, [(0, 1, 1, 0), (1, 2, 1, 0), (2, 0, 1, 0)])
    assert lambda_stats(net) == ([1, 1, 1], 3)


def test_lambda_takes_smaller_side() -> None:
    net = FlowNetwork.from_arcs(3, [(0, 1, 5, 0), (1, 2, 2, 0), (2, 0, 9, 0)])
    assert lambda_stats(net) == ([5, 2, 2], 9)


def test_lambda_rejects_infinite_both_ways() -> None:
    net = FlowNetwork.from_arcs(2, [(0, 1, INF, 0), (1, 0, INF, 0)])
    with pytest.raises(InfiniteLambda):
        lambda_stats(net)


def test_refine_count() -> None:
    assert refine_count(3, 10, Fraction(1)) == 6
    assert refine_count(1, 2, Fraction(4)) == 0
    assert refine_count(0, 2, Fraction(1)) == 2


def test_adjust_prices_follows_capacity_sides() -> None:
    assert adjust_prices([0, 5, -1], [True, False, True], 2) == [-2, 7, -3]


def test_saturate_negative_reports_excess() -> None:
    problem = CirculationProblem.from_parts(2, [(0, 1, 3, -2), (1, 0, 3, 1)], None)
    state = FlowState.zero(problem)
    assert saturate_negative(state, problem, [0, 0]) == 3
    assert state.fin == [3, 0]
    # raising the head price drains the first arc and saturates the second
    assert saturate_negative(state, problem, [0, 5]) == 3
    assert state.fin == [0, 3]


def test_two_cycle_fixture(two_cycle) -> None:
    net, _ = two_cycle
    result = min_cost_circulation(CirculationProblem.from_network(net), Fraction(1, 2))
    assert result.cost == -4
    assert result.dart_flow() == {0: 1, 1: 1}
    assert result.refines == len(result.stats)


def test_positive_costs_mean_zero_flow() -> None:
    net, _ = gen_planar(3, 6, (1, 3), (1, 5))
    result = min_cost_circulation(CirculationProblem.from_network(net), Fraction(1, 2))
    assert result.cost == 0
    assert result.dart_flow() == {}


def test_uncapacitated_negative_arc() -> None:
    net = FlowNetwork.from_arcs(2, [(0, 1, INF, -3), (1, 0, 2, 1)])
    problem = CirculationProblem.from_network(net)
    assert problem.lambda_total == 4
    result = min_cost_circulation(problem, Fraction(1, 2))
    assert result.cost == -4 == brute_min_cost_circulation(net)
    assert result.dart_flow() == {0: 2, 2: 2}


@pytest.mark.parametrize("seed", range(6))
def test_matches_reference_solvers(seed: int) -> None:
    net, _ = gen_planar(seed, 7, (1, 4), (-6, 6))
    result = min_cost_circulation(CirculationProblem.from_network(net), Fraction(1, 2))
    expected = brute_min_cost_circulation(net)
    assert result.cost == expected
    assert ssp_circulation(net)[0] == expected


def test_result_is_a_circulation_within_capacities() -> None:
    net, _ = gen_planar(11, 8, (1, 3), (-5, 5))
    result = min_cost_circulation(CirculationProblem.from_network(net), Fraction(1, 2))
    flow = result.dart_flow()
    balance = [0] * net.n
    for d, f in flow.items():
        assert 0 < f <= net[d].capacity
        balance[net[d].tail] -= f
        balance[net[d].head] += f
    assert balance == [0] * net.n


def test_coarse_delta_stays_within_bound() -> None:
    net, _ = gen_planar(4, 8, (1, 3), (-5, 5))
    expected = brute_min_cost_circulation(net)
    result = min_cost_circulation(CirculationProblem.from_network(net), 8)
    assert expected <= result.cost <= expected + 8


def test_certificate_checks_pass(debug_asserts) -> None:
    net, _ = gen_planar(2, 8, (1, 3), (-5, 5))
    result = min_cost_circulation(CirculationProblem.from_network(net), Fraction(1, 2))
    assert result.cost == brute_min_cost_circulation(net)
    assert all(r.excess > 0 for r in result.trace)
    assert len(result.main_loops) == result.refines


def test_rejects_nonpositive_delta(two_cycle) -> None:
    net, _ = two_cycle
    with pytest.raises(ValueError):
        min_cost_circulation(CirculationProblem.from_network(net), 0)


def test_scaled_costs_past_bit_budget_raise(two_cycle) -> None:
    net, _ = two_cycle
    with override_settings(overflow_bits=8), pytest.raises(OverflowGuard):
        min_cost_circulation(CirculationProblem.from_network(net), Fraction(1, 4))


def test_escape_cost_past_bit_budget_raises(two_cycle) -> None:
    net, _ = two_cycle
    problem = CirculationProblem.from_network(net)
    with override_settings(overflow_bits=3), pytest.raises(OverflowGuard):
        AugResidual(problem, FlowState.zero(problem), [0] * problem.n, 2)


@pytest.mark.parametrize("seed", range(8))
def test_refine_loop_bounds(seed: int, debug_asserts) -> None:
    net, _ = gen_planar(seed, 10, (1, 4), (-6, 6), directed=seed % 2 == 1)
    problem = CirculationProblem.from_network(net)
    result = min_cost_circulation(problem, Fraction(1, 2))
    lam = problem.lambda_total
    assert all(loops <= 51 * math.sqrt(lam) + 2 for loops in result.main_loops)
    for stats in result.stats:
        deltas = [r.delta for r in stats.trace]
        assert all(after - before >= stats.eps // 2 for before, after in zip(deltas, deltas[1:]))
    assert result.total_flow <= 2 * lam
