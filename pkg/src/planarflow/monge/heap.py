"""Closest pair over a Monge matrix with row and column offsets.

Rows are activated with an offset ``alpha``; columns are extracted. The
value of entry ``(i, j)`` is ``M[i][j] + beta[j] + alpha[i]``. For every
column the active row holding its minimum is tracked as a list of
ownership triples ``(row, first_col, last_col)`` sorted by row, whose
column intervals are disjoint, increasing and cover all columns. A newly
activated row takes over a contiguous run of columns, found by two binary
searches. Each triple's best active column (its champion) lives in a lazy
heap.
"""

from __future__ import annotations

import bisect
import heapq
import itertools
import logging
from typing import Callable, Sequence

from planarflow.monge.colmin import EnvelopeColMin

logger = logging.getLogger(__name__)


class MongeHeap:
    def __init__(
        self,
        nrows: int,
        ncols: int,
        entry: Callable[[int, int], int | float],
        col_offset: Sequence[int],
        active_cols: Sequence[int] | None = None,
    ) -> None:
        self.nrows = nrows
        self.ncols = ncols
        self._entry = entry
        self._beta = list(col_offset)
        self._shifted = lambda i, j: entry(i, j) + self._beta[j]
        self.colmin = EnvelopeColMin(nrows, ncols, self._shifted)
        if active_cols is not None:
            keep = set(active_cols)
            for j in range(ncols):
                if j not in keep:
                    self.colmin.deactivate(j)
        self._alpha: dict[int, int] = {}
        # ownership triples, parallel lists sorted by row and by first column
        self._rows: list[int] = []
        self._first: list[int] = []
        self._last: list[int] = []
        self._ids: list[int] = []
        self._ids_seq = itertools.count()
        self._version: dict[int, int] = {}
        self._heap: list[tuple[int | float, int, int, int, int]] = []

    def __repr__(self) -> str:
        return f"MongeHeap({self.nrows}x{self.ncols}, rows={len(self._alpha)}, owners={len(self._rows)})"

    def _value(self, i: int, j: int) -> int | float:
        return self._shifted(i, j) + self._alpha[i]

    def _owner_slot(self, j: int) -> int:
        return bisect.bisect_right(self._first, j) - 1

    def _wins(self, r: int, j: int) -> bool:
        owner = self._rows[self._owner_slot(j)]
        return self._value(r, j) < self._value(owner, j)

    def _refresh(self, slot: int) -> None:
        tid = self._ids[slot]
        self._version[tid] = self._version.get(tid, 0) + 1
        row = self._rows[slot]
        best = self.colmin.subrow_min(row, self._first[slot], self._last[slot])
        if best is None:
            return
        col, value = best
        heapq.heappush(self._heap, (value + self._alpha[row], col, row, tid, self._version[tid]))

    def _retire(self, slot: int) -> None:
        self._version[self._ids[slot]] = self._version.get(self._ids[slot], 0) + 1

    def activate_row(self, r: int, alpha: int) -> None:
        if r in self._alpha or self.ncols == 0:
            return
        self._alpha[r] = alpha
        if not self._rows:
            self._insert(0, r, 0, self.ncols - 1)
            return
        p = bisect.bisect_left(self._rows, r)
        lo: int | None = None
        hi: int | None = None
        if p > 0:
            a_end = self._last[p - 1]
            a, b = self._first[0], a_end + 1
            while a < b:
                mid = (a + b) // 2
                if self._wins(r, mid):
                    b = mid
                else:
                    a = mid + 1
            if a <= a_end:
                lo, hi = a, a_end
        if p < len(self._rows):
            b_start = self._first[p]
            a, b = b_start, self._last[-1] + 1
            while a < b:
                mid = (a + b) // 2
                if self._wins(r, mid):
                    a = mid + 1
                else:
                    b = mid
            if a > b_start:
                hi = a - 1
                if lo is None:
                    lo = b_start
        if lo is None or hi is None:
            return
        self._take_over(p, r, lo, hi)

    def _insert(self, slot: int, r: int, lo: int, hi: int) -> None:
        tid = next(self._ids_seq)
        self._rows.insert(slot, r)
        self._first.insert(slot, lo)
        self._last.insert(slot, hi)
        self._ids.insert(slot, tid)
        self._refresh(slot)

    def _take_over(self, p: int, r: int, lo: int, hi: int) -> None:
        first_hit = self._owner_slot(lo)
        last_hit = self._owner_slot(hi)
        keep_left = self._first[first_hit] < lo
        keep_right = self._last[last_hit] > hi
        for slot in range(first_hit, last_hit + 1):
            self._retire(slot)
        left = (self._rows[first_hit], self._first[first_hit], lo - 1, self._ids[first_hit])
        right = (self._rows[last_hit], hi + 1, self._last[last_hit], self._ids[last_hit])
        del self._rows[first_hit : last_hit + 1]
        del self._first[first_hit : last_hit + 1]
        del self._last[first_hit : last_hit + 1]
        del self._ids[first_hit : last_hit + 1]
        slot = first_hit
        if keep_left:
            self._splice(slot, *left)
            slot += 1
        self._insert(slot, r, lo, hi)
        slot += 1
        if keep_right:
            rid = right[3] if not keep_left or first_hit != last_hit else next(self._ids_seq)
            self._splice(slot, right[0], right[1], right[2], rid)

    def _splice(self, slot: int, r: int, lo: int, hi: int, tid: int) -> None:
        self._rows.insert(slot, r)
        self._first.insert(slot, lo)
        self._last.insert(slot, hi)
        self._ids.insert(slot, tid)
        self._refresh(slot)

    def extract_col(self, j: int) -> None:
        if not self.colmin.is_active(j):
            return
        self.colmin.deactivate(j)
        if self._rows:
            self._refresh(self._owner_slot(j))

    def current_min(self) -> tuple[int | float, int, int] | None:
        """``(value, row, col)`` of the minimum over active rows and columns."""
        heap = self._heap
        while heap and heap[0][4] != self._version.get(heap[0][3]):
            heapq.heappop(heap)
        if not heap:
            return None
        value, col, row, _, _ = heap[0]
        return value, row, col

    def owners(self) -> list[tuple[int, int, int]]:
        return list(zip(self._rows, self._first, self._last))
