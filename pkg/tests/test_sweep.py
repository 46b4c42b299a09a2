"""Larger randomized agreement runs. Deselected by default; run with ``-m slow``."""

from __future__ import annotations

import random

import pytest

from planarflow.brute import brute_distances, brute_has_negative_cycle, brute_max_flow
from planarflow.cli import verify_graph
from planarflow.config import override_settings
from planarflow.graphcore import gen_planar
from planarflow.models import OracleMode
from planarflow.negcycle import detect_negative_cycle
from planarflow.oracle import build_feasible, query_feasible, report_cut
from planarflow.paths import cycle_weight, is_simple_cycle, verify_price
from planarflow.proximity import ExplicitGraph
from planarflow.psssp import dart_edges, sssp
from planarflow.weights import INF
from tests.conftest import _edges


@pytest.mark.slow
@pytest.mark.parametrize("seed", range(6))
def test_verify_undirected(seed: int) -> None:
    net, emb = gen_planar(seed, 24, (1, 8), (-6, 10))
    record = verify_graph(net, emb, lam=3, pairs=6, seed=seed)
    assert record.ok, record.failed


@pytest.mark.slow
@pytest.mark.parametrize("seed", range(6))
def test_verify_directed(seed: int) -> None:
    net, emb = gen_planar(seed, 30, (1, 5), (0, 9), directed=True)
    record = verify_graph(net, emb, lam=2, pairs=6, seed=seed)
    assert record.ok, record.failed


@pytest.mark.slow
def test_negative_cycles_over_a_thousand_graphs() -> None:
    for seed in range(1000):
        rng = random.Random(seed)
        n = rng.randint(3, 12)
        arcs = []
        for _ in range(2 * n):
            u, v = rng.sample(range(n), 2)
            arcs.append((u, v, rng.randint(-4, 8)))
        g = ExplicitGraph(range(n), _edges(arcs))
        outcome = detect_negative_cycle(g)
        assert outcome.has_cycle == brute_has_negative_cycle(range(n), g.edges()), seed
        if outcome.has_cycle:
            assert cycle_weight(outcome.cycle) < 0
            assert is_simple_cycle(outcome.cycle)
        else:
            verify_price(outcome.price, g.edges())


@pytest.mark.slow
@pytest.mark.parametrize("n", [500, 1500, 3000])
def test_planar_sssp_at_scale(n: int) -> None:
    net, emb = gen_planar(n, n, (1, 5), (0, 9), directed=True)
    rng = random.Random(n)
    pot = [rng.randint(-20, 20) for _ in range(n)]
    weights = [e.cost + pot[e.tail] - pot[e.head] if e.capacity != 0 else None for e in net]
    with override_settings(brute_cap=2 * n):
        ref = brute_distances(range(n), dart_edges(emb, weights), 0)
    assert sssp(emb, weights, 0) == [ref.get(v, INF) for v in range(n)]


@pytest.mark.slow
@pytest.mark.parametrize("fixture", range(20))
def test_oracle_triples(fixture: int) -> None:
    # 20 graphs of 10..200 vertices, 500 (s, t, lambda) triples each
    n = 10 * (fixture + 1)
    net, emb = gen_planar(fixture, n, (1, 6), (0, 0), directed=fixture % 2 == 1)
    mode = OracleMode.DYNAMIC if fixture % 3 == 0 else OracleMode.STATIC
    rng = random.Random(fixture)
    pairs = [tuple(rng.sample(range(n), 2)) for _ in range(100)]
    truth = {(s, t): brute_max_flow(net, s, t) for s, t in pairs}
    for lam in (1, 2, 4, 7, 11):
        index = build_feasible(net, emb, lam, mode)
        for s, t in pairs:
            feasible = query_feasible(index, s, t)
            assert feasible == (truth[(s, t)] >= lam), (fixture, lam, s, t)
            if not feasible:
                cut = report_cut(index, s, t)
                assert cut is not None
                assert truth[(s, t)] <= sum(net[d].capacity for d in cut) < lam
