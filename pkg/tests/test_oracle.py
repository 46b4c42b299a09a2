"""Feasibility indexes, cuts, dynamic updates, index files and flow values."""

from __future__ import annotations

from fractions import Fraction
from pathlib import Path

import pytest

from planarflow.brute import brute_max_flow
from planarflow.errors import StaticIndex
from planarflow.graphcore import FlowNetwork, PlanarEmbedding, gen_planar
from planarflow.models import OracleMode
from planarflow.oracle import (
    ShiftedWeights,
    build_approx,
    build_feasible,
    dual_weights,
    dumps_index,
    dynamic_frontier,
    exact_value,
    index_digest,
    lambda_grid,
    load_index,
    loads_index,
    query_approx,
    query_feasible,
    report_cut,
    run_query,
    save_index,
    st_path,
)

PAIRS = [(0, 6), (6, 0), (1, 5), (3, 2)]


def _small(seed: int) -> tuple[FlowNetwork, PlanarEmbedding]:
    return gen_planar(seed, 7, (1, 4), (0, 0))


def test_single_edge_threshold(single_edge) -> None:
    net, emb = single_edge
    assert query_feasible(build_feasible(net, emb, 7), 0, 1)
    index = build_feasible(net, emb, 8)
    assert not query_feasible(index, 0, 1)
    assert report_cut(index, 0, 1) == [0]


def test_reverse_of_single_edge_has_empty_cut(single_edge) -> None:
    net, emb = single_edge
    index = build_feasible(net, emb, 1)
    assert report_cut(index, 1, 0) == []


def test_square_cut(square) -> None:
    net, emb = square
    assert query_feasible(build_feasible(net, emb, 2, leaf_cutoff=2), 0, 2)
    index = build_feasible(net, emb, 3, leaf_cutoff=2)
    cut = report_cut(index, 0, 2)
    assert cut is not None
    assert sum(net[d].capacity for d in cut) == 2
    assert report_cut(build_feasible(net, emb, 2), 1, 3) is None


@pytest.mark.parametrize("seed", range(3))
@pytest.mark.parametrize("mode", [OracleMode.STATIC, OracleMode.DYNAMIC])
def test_queries_match_max_flow(seed: int, mode: OracleMode) -> None:
    net, emb = _small(seed)
    index = build_feasible(net, emb, 4, mode, leaf_cutoff=4)
    for s, t in PAIRS:
        assert query_feasible(index, s, t) == (brute_max_flow(net, s, t) >= 4)


@pytest.mark.parametrize("seed", range(2))
def test_reported_cuts_are_verified(seed: int) -> None:
    net, emb = _small(seed)
    index = build_feasible(net, emb, 6, leaf_cutoff=4)
    for s, t in PAIRS:
        cut = report_cut(index, s, t)
        truth = brute_max_flow(net, s, t)
        assert (cut is None) == (truth >= 6)
        if cut is not None:
            assert sum(net[d].capacity for d in cut) < 6


def test_queries_leave_index_untouched() -> None:
    net, emb = _small(4)
    index = build_feasible(net, emb, 3, leaf_cutoff=4)
    before = index_digest(index)
    for s, t in PAIRS:
        run_query(index, s, t)
    assert index_digest(index) == before


def test_query_input_errors(single_edge) -> None:
    net, emb = single_edge
    index = build_feasible(net, emb, 1)
    with pytest.raises(ValueError):
        run_query(index, 0, 0)
    with pytest.raises(ValueError):
        run_query(index, 0, 5)
    with pytest.raises(ValueError):
        build_feasible(net, emb, 0)


def test_dynamic_update_matches_rebuild() -> None:
    net, emb = _small(3)
    index = build_feasible(net, emb, 3, OracleMode.DYNAMIC, 6, leaf_cutoff=3)
    touched = index.update_capacity(2, 0)
    assert touched
    assert all(1 in index.tree.nodes[h].slots for h in touched)
    changed = net.with_capacity(2, 0)
    fresh = build_feasible(changed, emb, 3, OracleMode.DYNAMIC, 6, leaf_cutoff=3)
    for s, t in PAIRS:
        expected = brute_max_flow(changed, s, t) >= 3
        assert query_feasible(index, s, t) == expected
        assert query_feasible(fresh, s, t) == expected


def test_static_index_refuses_updates(single_edge) -> None:
    net, emb = single_edge
    index = build_feasible(net, emb, 1)
    with pytest.raises(StaticIndex):
        index.update_capacity(0, 3)


def test_update_input_errors(single_edge) -> None:
    net, emb = single_edge
    index = build_feasible(net, emb, 1, OracleMode.DYNAMIC)
    with pytest.raises(ValueError):
        index.update_capacity(5, 1)
    with pytest.raises(ValueError):
        index.update_capacity(0, -1)


def test_dynamic_frontier_covers_leaves() -> None:
    net, emb = _small(1)
    index = build_feasible(net, emb, 2, OracleMode.DYNAMIC, 5, leaf_cutoff=2)
    tree = index.tree
    front = set(dynamic_frontier(tree, 5))
    assert front == set(index.frontier)
    for leaf in tree.leaves():
        assert len(front & ({leaf} | set(tree.ancestors(leaf)))) == 1
    for h in front:
        assert len(tree.nodes[h].faces) <= 5 or tree.nodes[h].is_leaf


def test_index_file_round_trip(tmp_path: Path) -> None:
    net, emb = _small(2)
    index = build_feasible(net, emb, 3, OracleMode.DYNAMIC, 6, leaf_cutoff=4)
    path = tmp_path / "small.index"
    save_index(index, path)
    loaded = load_index(path)
    assert index_digest(loaded) == index_digest(index)
    assert dumps_index(loads_index(dumps_index(loaded))) == dumps_index(index)
    for s, t in PAIRS:
        assert query_feasible(loaded, s, t) == query_feasible(index, s, t)


def test_digest_is_deterministic() -> None:
    net, emb = _small(5)
    a = build_feasible(net, emb, 2, leaf_cutoff=4)
    b = build_feasible(net, emb, 2, leaf_cutoff=4)
    assert index_digest(a) == index_digest(b)


def test_loaded_dynamic_index_accepts_updates(tmp_path: Path) -> None:
    net, emb = _small(6)
    path = tmp_path / "dyn.index"
    save_index(build_feasible(net, emb, 2, OracleMode.DYNAMIC, 6, leaf_cutoff=4), path)
    loaded = load_index(path)
    loaded.update_capacity(0, 9)
    changed = net.with_capacity(0, 9)
    for s, t in PAIRS:
        assert query_feasible(loaded, s, t) == (brute_max_flow(changed, s, t) >= 2)


def test_lambda_grid() -> None:
    assert lambda_grid(Fraction(1, 2), 10) == [1, 2, 3, 4, 6, 8, 12]
    assert lambda_grid(Fraction(1, 4), 1) == [1]


@pytest.mark.parametrize("seed", range(2))
def test_approx_stays_within_factor(seed: int) -> None:
    net, emb = gen_planar(seed, 7, (1, 6), (0, 0))
    eps = Fraction(1, 4)
    oracle = build_approx(net, emb, eps, leaf_cutoff=4)
    for s, t in PAIRS:
        truth = brute_max_flow(net, s, t)
        value = query_approx(oracle, s, t)
        assert value <= truth
        assert value * (1 + eps) > truth


def test_approx_rejects_bad_eps(single_edge) -> None:
    net, emb = single_edge
    for eps in (0, 1, "1.5"):
        with pytest.raises(ValueError):
            build_approx(net, emb, eps)


def test_approx_zero_without_flow(single_edge) -> None:
    net, emb = single_edge
    assert query_approx(build_approx(net, emb, "0.5"), 1, 0) == 0


@pytest.mark.parametrize("seed", range(3))
def test_exact_value_matches_dinitz(seed: int) -> None:
    net, emb = gen_planar(seed, 9, (1, 7), (0, 0))
    for s, t in [(0, 8), (8, 0), (2, 6), (4, 1)]:
        assert exact_value(net, emb, s, t) == brute_max_flow(net, s, t)


def test_exact_value_fixtures(single_edge, square) -> None:
    assert exact_value(*single_edge, 0, 1) == 7
    assert exact_value(*single_edge, 1, 0) == 0
    assert exact_value(*square, 0, 2) == 2
    assert exact_value(*square, 1, 3) == 2
    with pytest.raises(ValueError):
        exact_value(*square, 1, 1)


def test_exact_value_across_components() -> None:
    net = FlowNetwork.from_arcs(4, [(0, 1, 2, 0), (2, 3, 5, 0)])
    emb = PlanarEmbedding([[0], [1], [2], [3]])
    assert st_path(emb, 0, 3) is None
    assert exact_value(net, emb, 0, 3) == 0


def test_shifted_weights() -> None:
    shifted = ShiftedWeights([5, None, 3, 3], [0, 2], 2)
    assert list(shifted) == [3, None, 1, 5]
    assert shifted[1:3] == [None, 1]


def test_dual_weights(single_edge, square) -> None:
    assert dual_weights(single_edge[0]) == [7, 0]
    assert dual_weights(square[0])[:3] == [None, None, 1]
    assert dual_weights(single_edge[0], infinite=[1]) == [7, None]


def test_st_path_is_a_walk(square) -> None:
    _, emb = square
    path = st_path(emb, 0, 2)
    assert len(path) == 2
    assert emb.tail[path[0]] == 0 and emb.head[path[-1]] == 2
