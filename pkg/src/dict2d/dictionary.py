"""Public dynamic 2D dictionary: updates and engine dispatch."""

from __future__ import annotations

from typing import Iterable, Sequence

from .bird_baker import BlockPlan, LinearEngine
from .core import (
    Counters,
    DictionaryError,
    DictionaryStats,
    Occurrence,
    PatternMatrix,
    TextGrid,
)
from .group1 import Group1Engine
from .group2 import Group2Engine
from .periodicity import Group, classify_pattern
from .row_index import RowIndex

ENGINES = ("auto", "linear", "blocked", "grouped")


class Dictionary2D:
    """A dynamic set of uniform-width patterns.

    Every pattern is kept in the linear engine and in exactly one of the
    Group I / Group II engines, so any engine can answer a search.  ``auto``
    picks the blocked engine when d >= m_bar and the grouped engines
    otherwise.
    """

    def __init__(self, engine: str = "auto"):
        if engine not in ENGINES:
            raise ValueError(f"unknown engine {engine!r}")
        self.engine = engine
        self.counters = Counters()
        self.stats = DictionaryStats()
        self.row_index = RowIndex(self.counters)
        self.linear = LinearEngine(self.counters)
        self.group1 = Group1Engine(self.counters)
        self.group2 = Group2Engine(self.row_index, self.counters)
        self.patterns: dict[int, PatternMatrix] = {}
        self._rix: dict[int, list[int]] = {}
        self._group: dict[int, Group] = {}
        self._next_id = 1

    def __len__(self) -> int:
        return len(self.patterns)

    def __contains__(self, pid: int) -> bool:
        return pid in self.patterns

    @property
    def m_bar(self) -> int:
        return self.stats.m_bar

    def insert_pattern(self, rows: PatternMatrix | Sequence[bytes]) -> int:
        if isinstance(rows, PatternMatrix):
            rows = rows.rows
        try:
            P = PatternMatrix(self._next_id, tuple(rows))
        except ValueError as exc:
            raise DictionaryError(str(exc)) from None
        if self.patterns and P.width != self.m_bar:
            raise DictionaryError(f"pattern width {P.width} != dictionary width {self.m_bar}")
        self._next_id += 1
        rix = [self.row_index.insert_row(r) for r in P.rows]
        self.linear.update(P, "add", rix)
        group = classify_pattern(P.rows).group
        if group is Group.I:
            self.group1.preprocess_pattern(P)
        else:
            self.group2.preprocess_pattern(P, rix)
        self.patterns[P.id] = P
        self._rix[P.id] = rix
        self._group[P.id] = group
        self.stats.add(P.height, P.width)
        return P.id

    def remove_pattern(self, pid: int) -> None:
        P = self.patterns.pop(pid, None)
        if P is None:
            raise DictionaryError(f"unknown pattern id {pid}")
        self.linear.update(P, "remove")
        if self._group.pop(pid) is Group.I:
            self.group1.remove_pattern(pid)
        else:
            self.group2.remove_pattern(pid)
        for name in self._rix.pop(pid):
            self.row_index.remove_row(name)
        self.stats.remove(P.height, P.width)

    def group_of(self, pid: int) -> Group:
        return self._group[pid]

    def plan(self) -> BlockPlan:
        return BlockPlan.for_dims(self.stats.m_prime, self.stats.m_bar)

    def resolve_engine(self, engine: str | None = None) -> str:
        engine = engine or self.engine
        if engine not in ENGINES:
            raise ValueError(f"unknown engine {engine!r}")
        if engine == "auto":
            return "blocked" if self.stats.d >= self.stats.m_bar else "grouped"
        return engine

    def search(self, text: TextGrid | Sequence[bytes], engine: str | None = None) -> set[Occurrence]:
        return set(self.search_reports(text, engine))

    def search_reports(
        self, text: TextGrid | Sequence[bytes], engine: str | None = None, dedup: bool = True
    ) -> list[Occurrence]:
        """Occurrences as reported, block by block (duplicates would show here)."""
        if not isinstance(text, TextGrid):
            text = TextGrid(tuple(text))
        if not self.patterns or text.width < self.m_bar:
            return []
        engine = self.resolve_engine(engine)
        if engine == "linear":
            return sorted(self.linear.search_linear(text))
        plan = self.plan()
        if engine == "blocked":
            return self.linear.search_blocked(text, plan, self.row_index, dedup)
        return self._search_grouped(text, plan, dedup)

    def _search_grouped(self, text: TextGrid, plan: BlockPlan, dedup: bool) -> list[Occurrence]:
        self.group2.prepare()
        row_limit = plan.step_h if dedup else None
        col_limit = plan.step_w if dedup else None
        engines = [e for e in (self.group1, self.group2) if len(e)]
        out = []
        for top, left, h, w in plan.blocks(text.height, text.width):
            if w < self.m_bar:
                continue
            rows = [r[left - 1:left - 1 + w] for r in text.rows[top - 1:top - 1 + h]]
            self.counters.alloc(h * w)
            for eng in engines:
                for r, c, pid in eng.search_block(rows, row_limit, col_limit):
                    out.append(Occurrence(pid, top + r - 1, left + c - 1))
            self.counters.free(h * w)
        return out

    def reset_counters(self) -> None:
        self.counters.reset()

    def stats_lines(self) -> list[str]:
        s = self.stats
        return [
            f"d={s.d}",
            f"ell={s.ell}",
            f"m_bar={s.m_bar}",
            f"m_prime={s.m_prime}",
            f"tau={self.counters.tau}",
            f"comparisons={self.counters.comparisons}",
        ]

    @classmethod
    def from_patterns(cls, patterns: Iterable[Sequence[bytes]], engine: str = "auto") -> "Dictionary2D":
        d = cls(engine)
        for p in patterns:
            d.insert_pattern(p)
        return d
