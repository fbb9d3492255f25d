"""Dynamic Bird/Baker engine: whole-text linear mode and the blocked mode.

Pattern rows are named through a dynamic 1D matcher over bytes; each
pattern becomes the column word of its row names, held in a second dynamic
matcher over names.  Searching labels every text position where a pattern
row ends, then scans columns of labels.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Sequence

from .core import Counters, DictionaryError, Occurrence, PatternMatrix, TextGrid
from .dyn_dict_1d import DynMatcher
from .row_index import RowIndex

NULL = -1


@dataclass(frozen=True)
class BlockPlan:
    block_h: int
    block_w: int
    step_h: int
    step_w: int

    @classmethod
    def for_dims(cls, m_prime: int, m_bar: int) -> "BlockPlan":
        return cls(
            block_h=-(-3 * m_prime // 2),
            block_w=-(-3 * m_bar // 2),
            step_h=max(1, -(-m_prime // 2)),
            step_w=max(1, -(-m_bar // 2)),
        )

    def blocks(self, n1: int, n2: int) -> Iterator[tuple[int, int, int, int]]:
        """Yield (top, left, height, width) of every block, 1-based, clipped."""
        for top in range(1, n1 + 1, self.step_h):
            h = min(self.block_h, n1 - top + 1)
            for left in range(1, n2 + 1, self.step_w):
                yield top, left, h, min(self.block_w, n2 - left + 1)

    def owns(self, r: int, c: int) -> bool:
        """Whether a block-relative top-left (1-based) is attributed to the block."""
        return r <= self.step_h and c <= self.step_w


class LinearEngine:
    def __init__(self, counters: Counters | None = None):
        self.counters = counters if counters is not None else Counters()
        self.width: int | None = None
        self.row_names = DynMatcher()
        self.row_count: dict[int, int] = {}
        self.column_matcher = DynMatcher()
        self.d_prime: dict[int, tuple[int, ...]] = {}
        self.heights: dict[int, int] = {}
        self._column_id: dict[int, int] = {}  # column-matcher id -> pattern id
        self._pattern_column: dict[int, int] = {}
        # row-index name -> row-matcher name, for blocked mode
        self.rix_to_name: dict[int, int] = {}
        self._rix_of: dict[int, list[int]] = {}

    def _name_row(self, row: bytes) -> int:
        hits = self.row_names.scan_hits(row)
        for e, pid in hits:
            if e == len(row):
                self.row_count[pid] += 1
                return pid
        pid = self.row_names.insert_pattern(row)
        self.row_count[pid] = 1
        return pid

    def update(self, P: PatternMatrix, action: str, rix_names: Sequence[int] | None = None) -> None:
        if action == "add":
            if self.width is not None and P.width != self.width:
                raise DictionaryError(f"pattern width {P.width} != dictionary width {self.width}")
            if P.id in self.d_prime:
                raise DictionaryError(f"pattern {P.id} already present")
            self.width = P.width
            names = tuple(self._name_row(r) for r in P.rows)
            self.d_prime[P.id] = names
            self.heights[P.id] = P.height
            cid = self.column_matcher.insert_pattern(names)
            self._column_id[cid] = P.id
            self._pattern_column[P.id] = cid
            if rix_names is not None:
                self._rix_of[P.id] = list(rix_names)
                for rn, n in zip(rix_names, names):
                    self.rix_to_name[rn] = n
        elif action == "remove":
            if P.id not in self.d_prime:
                raise DictionaryError(f"unknown pattern {P.id}")
            names = self.d_prime.pop(P.id)
            del self.heights[P.id]
            cid = self._pattern_column.pop(P.id)
            del self._column_id[cid]
            self.column_matcher.remove_pattern(cid)
            for n in names:
                self.row_count[n] -= 1
                if not self.row_count[n]:
                    del self.row_count[n]
                    self.row_names.remove_pattern(n)
            dead = set(names) - set(self.row_count)
            for rn in self._rix_of.pop(P.id, ()):
                if self.rix_to_name.get(rn) in dead:
                    del self.rix_to_name[rn]
            if not self.d_prime:
                self.width = None
        else:
            raise ValueError(f"unknown action {action!r}")
        self._sync_work()

    def _sync_work(self) -> None:
        w = self.row_names.work + self.column_matcher.work
        self.counters.comparisons += w - getattr(self, "_work_seen", 0)
        self._work_seen = w

    def _columns(self, grid: list[list[int]], first_col: int, last_col: int, top_limit: int | None):
        """Scan label columns ``first_col..last_col`` (0-based); yield (top, col, pid)."""
        heights, column_id = self.heights, self._column_id
        m = self.width
        cols = [[row[c] for row in grid] for c in range(first_col, last_col + 1)]
        for c, hits in enumerate(self.column_matcher.scan_hits_many(cols), first_col):
            for e, cid in hits:
                pid = column_id[cid]
                top = e - heights[pid] + 1
                if top_limit is None or top <= top_limit:
                    yield top, c - m + 2, pid

    def search_linear(self, text: TextGrid) -> set[Occurrence]:
        if not self.d_prime or text.width < self.width:
            return set()
        n1, n2 = text.height, text.width
        grid = []
        self.counters.alloc(n1 * n2)
        for hits in self.row_names.scan_hits_many(text.rows):
            labels = [NULL] * n2
            for e, pid in hits:
                labels[e - 1] = pid
            grid.append(labels)
        out = {Occurrence(pid, r, c) for r, c, pid in self._columns(grid, self.width - 1, n2 - 1, None)}
        self.counters.free(n1 * n2)
        self._sync_work()
        return out

    def search_block(self, rows: Sequence[bytes], row_index: RowIndex, plan: BlockPlan | None):
        """Occurrences inside one block, block-relative; only owned ones if ``plan``."""
        m = self.width
        W = len(rows[0])
        if W < m:
            return []
        h = len(rows)
        self.counters.alloc(h * W)
        tr = self.rix_to_name
        grid = []
        for names in row_index.name_text_positions_many(rows):
            grid.append([NULL if n is None else tr.get(n, NULL) for n in names])
        last = W - 1 if plan is None else min(W - 1, m + plan.step_w - 2)
        found = list(self._columns(grid, m - 1, last, None if plan is None else plan.step_h))
        self.counters.free(h * W)
        self._sync_work()
        return found

    def search_blocked(self, text: TextGrid, plan: BlockPlan, row_index: RowIndex, dedup: bool = True):
        """All occurrences reported block by block (a list, so duplicates show)."""
        if not self.d_prime or text.width < self.width:
            return []
        out = []
        for top, left, h, w in plan.blocks(text.height, text.width):
            rows = [r[left - 1:left - 1 + w] for r in text.rows[top - 1:top - 1 + h]]
            for r, c, pid in self.search_block(rows, row_index, plan if dedup else None):
                out.append(Occurrence(pid, top + r - 1, left + c - 1))
        return out
