"""Monge matrices labeled by graph vertices."""

from __future__ import annotations

import logging
import random
from functools import cached_property
from typing import Sequence

from planarflow.weights import INF

logger = logging.getLogger(__name__)


class MongeMatrix:
    """Dense matrix whose rows and columns are labeled by vertex ids.

    ``key`` prefixes the identity of every entry, so entries of different
    matrices never collide inside a union.
    """

    def __init__(
        self,
        rows: Sequence[int],
        cols: Sequence[int],
        values: Sequence[Sequence[int | float]],
        key: tuple[int, ...] = (0,),
    ) -> None:
        if len(values) != len(rows) or any(len(r) != len(cols) for r in values):
            raise ValueError("values shape does not match labels")
        if len(set(rows)) != len(rows) or len(set(cols)) != len(cols):
            raise ValueError("row and column labels must be distinct")
        self.rows = tuple(rows)
        self.cols = tuple(cols)
        self.values = [list(r) for r in values]
        self.key = key

    def __repr__(self) -> str:
        return f"MongeMatrix({len(self.rows)}x{len(self.cols)}, key={self.key})"

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.rows), len(self.cols)

    @cached_property
    def row_index(self) -> dict[int, int]:
        return {v: i for i, v in enumerate(self.rows)}

    @cached_property
    def col_index(self) -> dict[int, int]:
        return {v: j for j, v in enumerate(self.cols)}

    @cached_property
    def labels(self) -> frozenset[int]:
        return frozenset(self.rows) | frozenset(self.cols)

    def entry(self, i: int, j: int) -> int | float:
        return self.values[i][j]

    def with_key(self, key: tuple[int, ...]) -> MongeMatrix:
        return MongeMatrix(self.rows, self.cols, self.values, key)

    def reversed_cols(self) -> MongeMatrix:
        return MongeMatrix(self.rows, self.cols[::-1], [r[::-1] for r in self.values], self.key)

    def row_block(self, lo: int, hi: int) -> MongeMatrix:
        return MongeMatrix(self.rows[lo:hi], self.cols, self.values[lo:hi], self.key)

    def transposed(self) -> MongeMatrix:
        values = [[self.values[i][j] for i in range(len(self.rows))] for j in range(len(self.cols))]
        return MongeMatrix(self.cols, self.rows, values, self.key)

    def scaled(self, factor: int) -> MongeMatrix:
        return MongeMatrix(
            self.rows, self.cols, [[v * factor for v in r] for r in self.values], self.key
        )

    def with_offsets(self, row_offset: Sequence[int], col_offset: Sequence[int]) -> MongeMatrix:
        values = [
            [v + row_offset[i] + col_offset[j] for j, v in enumerate(r)]
            for i, r in enumerate(self.values)
        ]
        return MongeMatrix(self.rows, self.cols, values, self.key)


def _quad_ok(m: MongeMatrix, a: int, b: int, c: int, d: int) -> bool:
    v = m.values
    return v[a][c] + v[b][d] <= v[a][d] + v[b][c]


def is_monge(m: MongeMatrix, samples: int | None = None, seed: int = 0) -> bool:
    """Check the four-point inequality.

    With ``samples`` unset, every adjacent 2x2 block is checked, which is
    equivalent to the full condition. Otherwise ``samples`` random
    quadruples are drawn. Single rows and columns always pass; an INF entry
    in a larger matrix fails.
    """
    r, c = m.shape
    if r < 2 or c < 2:
        return True
    if any(v == INF for row in m.values for v in row):
        return False
    if samples is None:
        return all(_quad_ok(m, i, i + 1, j, j + 1) for i in range(r - 1) for j in range(c - 1))
    rng = random.Random(seed)
    for _ in range(samples):
        a, b = sorted(rng.sample(range(r), 2))
        c1, d1 = sorted(rng.sample(range(c), 2))
        if not _quad_ok(m, a, b, c1, d1):
            return False
    return True


def split_until_monge(m: MongeMatrix) -> list[MongeMatrix]:
    """Cut ``m`` into row blocks that are Monge as given or with reversed columns."""
    if is_monge(m):
        return [m]
    flipped = m.reversed_cols()
    if is_monge(flipped):
        return [flipped]
    half = len(m.rows) // 2
    return split_until_monge(m.row_block(0, half)) + split_until_monge(m.row_block(half, len(m.rows)))
