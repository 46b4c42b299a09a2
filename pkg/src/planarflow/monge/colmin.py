"""Row minima over the active columns of a Monge matrix.

A segment tree over the columns stores, per node, the lower envelope of
its active columns: a list of ``(first_row, col)`` breakpoints saying that
from ``first_row`` on the leftmost minimum over the node's columns sits in
``col``. For Monge matrices the leftmost argmin is nondecreasing in the
row, so the envelope of a node is a prefix of its left child's envelope
followed by a suffix of its right child's. Deactivating a column dirties
its ancestors; they are rebuilt on the next query that touches them.
Internal envelopes start dirty, so a view that is never queried costs
only its leaves.
"""

from __future__ import annotations

import bisect
import logging
from typing import Callable

logger = logging.getLogger(__name__)

Lookup = Callable[[int, int], int | float]
Envelope = list[tuple[int, int]]


class EnvelopeColMin:
    def __init__(self, nrows: int, ncols: int, entry: Lookup) -> None:
        self.nrows = nrows
        self.ncols = ncols
        self._entry = entry
        size = 1
        while size < max(1, ncols):
            size *= 2
        self._size = size
        self._env: list[Envelope] = [[] for _ in range(2 * size)]
        self._dirty = [False] * (2 * size)
        self._active = [True] * ncols
        self.rebuilds = 0
        if nrows == 0:
            self._active = [False] * ncols
            return
        for j in range(ncols):
            self._env[size + j] = [(0, j)]
        for node in range(1, size):
            self._dirty[node] = True

    def __repr__(self) -> str:
        return f"EnvelopeColMin({self.nrows}x{self.ncols}, active={sum(self._active)})"

    def is_active(self, j: int) -> bool:
        return self._active[j]

    def _at(self, env: Envelope, row: int) -> tuple[int, int | float]:
        k = bisect.bisect_right(env, (row, self.ncols)) - 1
        col = env[k][1]
        return col, self._entry(row, col)

    def _merge(self, left: Envelope, right: Envelope) -> Envelope:
        if not left:
            return list(right)
        if not right:
            return list(left)
        lo, hi = 0, self.nrows
        while lo < hi:
            mid = (lo + hi) // 2
            if self._at(right, mid)[1] < self._at(left, mid)[1]:
                hi = mid
            else:
                lo = mid + 1
        switch = lo
        if switch == self.nrows:
            return list(left)
        merged = [bp for bp in left if bp[0] < switch]
        k = bisect.bisect_right(right, (switch, self.ncols)) - 1
        merged.append((switch, right[k][1]))
        merged.extend(right[k + 1 :])
        return merged

    def _clean(self, node: int) -> Envelope:
        if self._dirty[node]:
            left = self._clean(2 * node)
            right = self._clean(2 * node + 1)
            self._env[node] = self._merge(left, right)
            self._dirty[node] = False
            self.rebuilds += 1
        return self._env[node]

    def deactivate(self, j: int) -> None:
        if not self._active[j]:
            return
        self._active[j] = False
        node = self._size + j
        self._env[node] = []
        node //= 2
        while node and not self._dirty[node]:
            self._dirty[node] = True
            node //= 2

    def subrow_min(self, row: int, lo: int, hi: int) -> tuple[int, int | float] | None:
        """Leftmost minimum ``(col, value)`` of ``row`` over active columns in ``[lo, hi]``."""
        if lo > hi or self.nrows == 0:
            return None
        best: tuple[int, int | float] | None = None
        left_nodes: list[int] = []
        right_nodes: list[int] = []
        a, b = lo + self._size, hi + self._size + 1
        while a < b:
            if a & 1:
                left_nodes.append(a)
                a += 1
            if b & 1:
                b -= 1
                right_nodes.append(b)
            a //= 2
            b //= 2
        for node in left_nodes + right_nodes[::-1]:
            env = self._clean(node)
            if not env:
                continue
            cand = self._at(env, row)
            if best is None or cand[1] < best[1]:
                best = cand
        return best

    def row_min(self, row: int) -> tuple[int, int | float] | None:
        return self.subrow_min(row, 0, self.ncols - 1)
