"""Dense distance graphs of pieces."""

from __future__ import annotations

import random

import pytest

from planarflow.brute import brute_distances
from planarflow.ddg import (
    boundary_groups,
    build_piece_ddg,
    ddg_from_table,
    expand_cycle,
    expand_walk,
    monge_decomposition,
    negcycle_on_ddg,
    piece_graph,
    row_budget,
    union_ddg,
)
from planarflow.errors import InvariantViolation
from planarflow.graphcore import gen_planar
from planarflow.monge import is_monge
from planarflow.paths import cycle_weight, is_simple_cycle, verify_price
from planarflow.pdecomp import hole_sequences, make_piece
from planarflow.proximity import EdgeRef
from planarflow.weights import INF


@pytest.fixture()
def piece_and_weights():
    net, emb = gen_planar(6, 16, (1, 5), (0, 9))
    piece = make_piece(emb, range(emb.slots // 2 + 3))
    piece.boundary = piece.vertex_map[::2]
    return piece, [e.cost for e in net]


def test_boundary_groups() -> None:
    assert boundary_groups([1, 2, 3, 4], [[3, 1, 9], [1, 2]]) == [[3, 1], [2], [4]]
    assert boundary_groups([5], []) == [[5]]


def test_table_matches_reference(piece_and_weights) -> None:
    piece, weights = piece_and_weights
    ddg = build_piece_ddg(piece, weights, {}, key=0)
    graph = piece_graph(piece, weights)
    for u in ddg.boundary:
        ref = brute_distances(graph.vertices, graph.edges(), u)
        for v in ddg.boundary:
            assert ddg.distance(u, v) == ref.get(v, INF)


def test_matrices_are_monge_and_exact(piece_and_weights) -> None:
    piece, weights = piece_and_weights
    ddg = build_piece_ddg(piece, weights, {}, key=2)
    assert all(is_monge(m) for m in ddg.matrices)
    best: dict[tuple[int, int], int] = {}
    for e in ddg.source().edges():
        assert e.key[0] == 2 and len(e.key) == 4
        assert e.weight == ddg.distance(e.tail, e.head)
        best[(e.tail, e.head)] = e.weight
    for u in ddg.boundary:
        for v in ddg.boundary:
            if u != v and ddg.distance(u, v) != INF:
                assert (u, v) in best


def test_expand_follows_piece_paths(piece_and_weights) -> None:
    piece, weights = piece_and_weights
    ddg = build_piece_ddg(piece, weights, {}, key=0)
    for e in ddg.source().edges():
        path = ddg.expand(e)
        assert sum(x.weight for x in path) == e.weight
        assert path[0].tail == e.tail and path[-1].head == e.head


def test_nonnegative_union_has_price(piece_and_weights) -> None:
    piece, weights = piece_and_weights
    source = union_ddg([build_piece_ddg(piece, weights, {}, key=0)])
    outcome = negcycle_on_ddg(source)
    assert not outcome.has_cycle
    verify_price(outcome.price, source.edges())


def test_negative_cycle_across_two_ddgs() -> None:
    first = ddg_from_table(0, [0, 1], [[0, 2], [INF, 0]], [[0, 1]])
    second = ddg_from_table(1, [0, 1], [[0, INF], [-3, 0]], [[0, 1]])
    outcome = negcycle_on_ddg(union_ddg([first, second]))
    assert outcome.has_cycle
    assert cycle_weight(outcome.cycle) == -1
    assert {e.key[0] for e in outcome.cycle} == {0, 1}
    with pytest.raises(ValueError):
        first.expand(outcome.cycle[0])


def test_expand_walk_passes_plain_edges_through() -> None:
    plain = EdgeRef(0, 1, 4, (7,))
    assert expand_walk({}, [plain]) == [plain]
    cycle = expand_cycle({}, [EdgeRef(0, 1, 4, (1,)), EdgeRef(1, 0, -5, (2,))])
    assert is_simple_cycle(cycle)
    assert cycle_weight(cycle) == -1


def test_monge_decomposition_covers_all_pairs() -> None:
    table = [[0, 1, 2], [3, 0, 4], [5, 6, 0]]
    matrices = monge_decomposition([10, 11, 12], table, [[10, 11, 12]], key=4)
    pairs = {(m.rows[i], m.cols[j]) for m in matrices for i in range(len(m.rows)) for j in range(len(m.cols))}
    assert pairs == {(a, b) for a in (10, 11, 12) for b in (10, 11, 12) if a != b}
    assert all(m.key[0] == 4 for m in matrices)


def test_finite_table_stays_within_row_budget(debug_asserts) -> None:
    net, emb = gen_planar(3, 25, (1, 5), (0, 9))
    piece = make_piece(emb, range(emb.slots))
    piece.boundary = piece.vertex_map[::3]
    ddg = build_piece_ddg(piece, [e.cost for e in net], {}, key=0)
    assert all(v != INF for row in ddg.table for v in row)
    groups = boundary_groups(ddg.boundary, hole_sequences(piece))
    assert ddg.row_sum() <= row_budget(len(ddg.boundary), len(groups))


def test_unstructured_table_breaks_row_budget(debug_asserts) -> None:
    rng = random.Random(0)
    boundary = list(range(128))
    table = [[0 if i == j else rng.randint(1, 10**6) for j in boundary] for i in boundary]
    with pytest.raises(InvariantViolation):
        ddg_from_table(0, boundary, table, [boundary])
