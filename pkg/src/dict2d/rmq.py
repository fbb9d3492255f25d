"""Static sparse tables for O(1) range minimum / maximum queries."""

from __future__ import annotations

from typing import Callable, Sequence


class SparseTable:
    """Idempotent range query over a fixed sequence.

    ``query(start, stop)`` covers the half-open 0-based range; build is
    O(n log n).
    """

    def __init__(self, data: Sequence[int], op: Callable[[int, int], int] = min):
        self.op = op
        level = list(data)
        self.table = [level]
        span = 1
        while 2 * span <= len(data):
            prev = self.table[-1]
            level = [op(prev[i], prev[i + span]) for i in range(len(prev) - span)]
            self.table.append(level)
            span *= 2

    def query(self, start: int, stop: int) -> int:
        if start >= stop:
            raise ValueError("empty range")
        k = (stop - start).bit_length() - 1
        row = self.table[k]
        return self.op(row[start], row[stop - (1 << k)])

    def cells(self) -> int:
        return sum(len(level) for level in self.table)
