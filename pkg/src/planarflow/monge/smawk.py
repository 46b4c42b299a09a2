"""SMAWK row minima for totally monotone matrices."""

from __future__ import annotations

from typing import Callable, Literal, Sequence

from planarflow.monge.matrix import MongeMatrix

Lookup = Callable[[int, int], int | float]


def _smawk(rows: Sequence[int], cols: Sequence[int], f: Lookup, out: dict[int, int]) -> None:
    if not rows:
        return
    stack: list[int] = []
    for c in cols:
        while stack:
            r = rows[len(stack) - 1]
            if f(r, stack[-1]) <= f(r, c):
                break
            stack.pop()
        if len(stack) < len(rows):
            stack.append(c)
    _smawk(rows[1::2], stack, f, out)
    pos = {c: i for i, c in enumerate(stack)}
    start = 0
    for i in range(0, len(rows), 2):
        r = rows[i]
        stop = pos[out[rows[i + 1]]] if i + 1 < len(rows) else len(stack) - 1
        best = stack[start]
        best_value = f(r, best)
        for k in range(start + 1, stop + 1):
            value = f(r, stack[k])
            if value < best_value:
                best, best_value = stack[k], value
        out[r] = best
        start = stop


def smawk(nrows: int, ncols: int, f: Lookup) -> list[int]:
    """Leftmost argmin column of every row, probing O(nrows + ncols) entries."""
    out: dict[int, int] = {}
    _smawk(list(range(nrows)), list(range(ncols)), f, out)
    return [out[r] for r in range(nrows)]


def smawk_minima(m: MongeMatrix, axis: Literal["rows", "cols"] = "rows") -> list[int]:
    """Argmin index per row (or per column) of a Monge matrix."""
    nrows, ncols = m.shape
    if nrows == 0 or ncols == 0:
        return []
    if axis == "rows":
        return smawk(nrows, ncols, m.entry)
    return smawk(ncols, nrows, lambda j, i: m.values[i][j])
