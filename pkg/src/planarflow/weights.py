"""Capacity sentinel and the overflow guard for scaled integer weights."""

from __future__ import annotations

import math

from planarflow.errors import OverflowGuard

INF = math.inf


def is_finite(cap: int | float) -> bool:
    return cap != INF


def check_overflow(value: int, bits: int) -> None:
    """Raise OverflowGuard if |value| does not fit in ``bits`` bits."""
    if abs(value).bit_length() > bits:
        raise OverflowGuard(f"scaled value needs {abs(value).bit_length()} bits, budget is {bits}")
