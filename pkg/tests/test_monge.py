"""Monge matrices, SMAWK, column minima, the Monge heap and Monge-backed views."""

from __future__ import annotations

import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from planarflow.monge import (
    EnvelopeColMin,
    MongeHeap,
    MongeMatrix,
    MongeSource,
    is_monge,
    monge_cp,
    monge_nn,
    smawk_minima,
    split_until_monge,
)
from planarflow.weights import INF


def _random_monge(rng: random.Random, r: int, c: int) -> list[list[int]]:
    """Helper: row and column offsets plus a nonnegative density summed over lower-left blocks."""
    w = [[rng.randint(0, 3) for _ in range(c)] for _ in range(r)]
    d = [rng.randint(-10, 10) for _ in range(r)]
    e = [rng.randint(-10, 10) for _ in range(c)]
    return [
        [d[i] + e[j] + sum(w[a][b] for a in range(i + 1) for b in range(j + 1, c)) for j in range(c)]
        for i in range(r)
    ]


def test_one_by_one() -> None:
    assert smawk_minima(MongeMatrix([0], [1], [[7]])) == [0]


def test_two_by_two() -> None:
    m = MongeMatrix([0, 1], [2, 3], [[1, 2], [2, 1]])
    assert is_monge(m)
    assert smawk_minima(m) == [0, 1]


def test_empty_matrix() -> None:
    assert smawk_minima(MongeMatrix([], [0, 1], [])) == []


@settings(max_examples=200, deadline=None)
@given(seed=st.integers(0, 10**6), r=st.integers(1, 12), c=st.integers(1, 12))
def test_smawk_matches_scan(seed: int, r: int, c: int) -> None:
    values = _random_monge(random.Random(seed), r, c)
    m = MongeMatrix(range(r), range(100, 100 + c), values)
    assert is_monge(m)
    for i, j in enumerate(smawk_minima(m)):
        assert values[i][j] == min(values[i])
    for j, i in enumerate(smawk_minima(m, axis="cols")):
        assert values[i][j] == min(row[j] for row in values)


def test_generated_matrices_pass_sampled_check() -> None:
    rng = random.Random(5)
    for _ in range(20):
        m = MongeMatrix(range(10), range(10), _random_monge(rng, 10, 10))
        assert is_monge(m, samples=1000, seed=1)


def test_is_monge_rejects_anti_monge_and_inf() -> None:
    assert not is_monge(MongeMatrix([0, 1], [0, 1], [[1, 0], [0, 1]]))
    assert not is_monge(MongeMatrix([0, 1], [0, 1], [[0, INF], [0, 0]]))
    assert is_monge(MongeMatrix([0], [0, 1], [[INF, 3]]))


def test_offsets_keep_monge() -> None:
    rng = random.Random(2)
    m = MongeMatrix(range(6), range(6), _random_monge(rng, 6, 6))
    shifted = m.with_offsets([rng.randint(-50, 50) for _ in range(6)], [rng.randint(-50, 50) for _ in range(6)])
    assert is_monge(shifted)
    assert is_monge(m.transposed())


def test_split_until_monge() -> None:
    flipped = split_until_monge(MongeMatrix([0, 1], [5, 6], [[1, 0], [0, 1]]))
    assert len(flipped) == 1
    assert flipped[0].cols == (6, 5)
    blocks = split_until_monge(MongeMatrix([0, 1, 2], [0, 1, 2], [[0, 5, 0], [5, 0, 5], [0, 5, 0]]))
    assert all(is_monge(b) for b in blocks)
    assert sorted(v for b in blocks for v in b.rows) == [0, 1, 2]


def test_matrix_rejects_bad_shapes() -> None:
    with pytest.raises(ValueError):
        MongeMatrix([0, 1], [0], [[1]])
    with pytest.raises(ValueError):
        MongeMatrix([0, 0], [0], [[1], [2]])


def _active_min(values: list[list[int]], row: int, active: set[int]) -> int | None:
    return min((values[row][j] for j in active), default=None)


def test_colmin_matches_scan_under_deactivation() -> None:
    rng = random.Random(7)
    values = _random_monge(rng, 15, 15)
    colmin = EnvelopeColMin(15, 15, lambda i, j: values[i][j])
    active = set(range(15))
    order = list(range(15))
    rng.shuffle(order)
    for j in order:
        for i in range(15):
            got = colmin.row_min(i)
            expected = _active_min(values, i, active)
            assert (got[1] if got else None) == expected
            if got:
                assert got[0] in active
        colmin.deactivate(j)
        active.discard(j)
    assert colmin.row_min(0) is None


def test_colmin_subrow_range() -> None:
    values = _random_monge(random.Random(3), 8, 8)
    colmin = EnvelopeColMin(8, 8, lambda i, j: values[i][j])
    colmin.deactivate(4)
    for i in range(8):
        col, value = colmin.subrow_min(i, 2, 6)
        assert value == min(values[i][j] for j in (2, 3, 5, 6))
        assert col in (2, 3, 5, 6)
    assert colmin.subrow_min(0, 4, 4) is None
    assert colmin.subrow_min(0, 5, 3) is None


def _heap_scan(values, alpha: dict[int, int], beta: list[int], cols: set[int]) -> int | None:
    return min((values[i][j] + beta[j] + a for i, a in alpha.items() for j in cols), default=None)


def _fuzz_heap(seed: int, ops: int) -> None:
    rng = random.Random(seed)
    r, c = rng.randint(1, 12), rng.randint(1, 12)
    values = _random_monge(rng, r, c)
    beta = [rng.randint(-8, 8) for _ in range(c)]
    heap = MongeHeap(r, c, lambda i, j: values[i][j], beta)
    alpha: dict[int, int] = {}
    cols = set(range(c))
    for _ in range(ops):
        if rng.random() < 0.6:
            i = rng.randrange(r)
            if i not in alpha:
                alpha[i] = rng.randint(-20, 20)
                heap.activate_row(i, alpha[i])
        elif cols:
            j = rng.choice(sorted(cols))
            cols.discard(j)
            heap.extract_col(j)
        got = heap.current_min()
        expected = _heap_scan(values, alpha, beta, cols)
        if expected is None:
            assert got is None
            continue
        value, row, col = got
        assert value == expected
        assert values[row][col] + beta[col] + alpha[row] == value
        owners = heap.owners()
        assert owners[0][1] == 0 and owners[-1][2] == c - 1
        assert all(owners[k][2] + 1 == owners[k + 1][1] for k in range(len(owners) - 1))


@pytest.mark.parametrize("seed", range(25))
def test_monge_heap_fuzz(seed: int) -> None:
    _fuzz_heap(seed, 40)


@pytest.mark.slow
def test_monge_heap_fuzz_ten_thousand_ops() -> None:
    for seed in range(250):
        _fuzz_heap(1000 + seed, 40)


def test_dominating_row_takes_every_column() -> None:
    values = _random_monge(random.Random(1), 4, 6)
    heap = MongeHeap(4, 6, lambda i, j: values[i][j], [0] * 6)
    heap.activate_row(0, 0)
    heap.activate_row(1, 0)
    heap.activate_row(2, -1000)
    assert heap.owners() == [(2, 0, 5)]


def test_heap_with_restricted_columns() -> None:
    values = _random_monge(random.Random(4), 5, 5)
    heap = MongeHeap(5, 5, lambda i, j: values[i][j], [0] * 5, active_cols=[1, 3])
    heap.activate_row(2, 0)
    value, row, col = heap.current_min()
    assert col in (1, 3)
    assert value == min(values[2][1], values[2][3])


def test_monge_cp_matches_scan() -> None:
    rng = random.Random(9)
    values = _random_monge(rng, 6, 7)
    m = MongeMatrix(range(6), range(10, 17), values, key=(3,))
    beta = lambda v: v % 4  # noqa: E731
    view = monge_cp(m, beta)
    assert view.minimum() is None
    view.activate(2, 5)
    view.activate(4, -1)
    view.extract(12)
    expected = min(values[i][j] + beta(10 + j) + a for i, a in ((2, 5), (4, -1)) for j in range(7) if j != 2)
    value, edge = view.minimum()
    assert value == expected
    assert edge.key[0] == 3
    assert edge.weight + {2: 5, 4: -1}[edge.tail] + beta(edge.head) == value


def test_monge_nn_threshold() -> None:
    m = MongeMatrix([0], [1], [[4]])
    assert monge_nn(m, [1], lambda v: 0, lambda v: 5).query(0) is not None
    assert monge_nn(m, [1], lambda v: 0, lambda v: 4).query(0) is None
    view = monge_nn(m, [1], lambda v: 0, lambda v: 5)
    view.deactivate(1)
    assert view.query(0) is None


def test_monge_nn_agrees_with_scan() -> None:
    rng = random.Random(12)
    values = _random_monge(rng, 8, 8)
    m = MongeMatrix(range(8), range(8, 16), values)
    price = lambda v: v % 3  # noqa: E731
    for tau in (-5, 0, 5, 20):
        view = monge_nn(m, range(8, 16), price, lambda v: tau)
        for i in range(8):
            e = view.query(i)
            hit = any(values[i][j] + price(8 + j) < tau for j in range(8))
            assert (e is not None) == hit


def test_monge_source_skips_inf_entries() -> None:
    src = MongeSource([MongeMatrix([0], [1, 2], [[INF, 3]]), MongeMatrix([1], [0], [[-2]])])
    edges = sorted((e.tail, e.head, e.weight) for e in src.edges())
    assert edges == [(0, 2, 3), (1, 0, -2)]
    assert src.vertices == (0, 1, 2)
    assert src.min_weight() == -2
    assert sorted(e.weight for e in src.scaled(3).edges()) == [-6, 9]


def test_monge_source_layout_is_reused() -> None:
    a = MongeMatrix([0, 1], [2, 3], [[1, 2], [3, 4]], key=(0,))
    b = MongeMatrix([0], [4], [[5]], key=(1,))
    src = MongeSource([a, b])
    assert src.layout(None) is src.layout(None)
    live = src.layout([2])
    assert live == [(a, [0])]
    assert src.layout(frozenset({2})) is live
    view = src.closest_pair(lambda v: 0, [2])
    view.activate(1, 0)
    assert view.minimum()[0] == 3
    view = src.closest_pair(lambda v: 10, [2])
    view.activate(0, 0)
    assert view.minimum()[0] == 11
