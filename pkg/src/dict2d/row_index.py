"""Dynamic self-index over the multiset of pattern rows.

Rows are named (equal content, equal name) and indexed in a generalized
suffix automaton, whose suffix links drive a single left-to-right
matching-statistics pass naming every text position where a full row ends.
Removal tombstones a row; the automaton is rebuilt from the live rows once
the retired rows exceed half the live ones.

Every query is charged to ``counters.tau``; the index stands in for a
compressed suffix tree, so tau is the artifact's measure of that slowdown.
"""

from __future__ import annotations

from typing import Protocol

import numpy as np

from . import kernels
from .core import Counters


class SuffixBackend(Protocol):
    """What :class:`RowIndex` needs from a suffix structure over its rows."""

    def add(self, row: bytes) -> int:
        """Index ``row``; return a handle identifying the full row."""

    def scan(self, line: bytes, width: int) -> tuple[list[int], int]:
        """Per position: handle of the full row ending there or -1; plus work."""

    def size(self) -> int: ...


class SuffixAutomaton:
    """Generalized suffix automaton (one automaton, many strings)."""

    def __init__(self) -> None:
        self.trans: list[dict[int, int]] = [{}]
        self.link: list[int] = [-1]
        self.length: list[int] = [0]
        self._csr = None
        self._handle = None

    def size(self) -> int:
        return len(self.length)

    def _clone(self, p: int, q: int, c: int) -> int:
        clone = len(self.length)
        self.trans.append(dict(self.trans[q]))
        self.link.append(self.link[q])
        self.length.append(self.length[p] + 1)
        self.link[q] = clone
        while p != -1 and self.trans[p].get(c) == q:
            self.trans[p][c] = clone
            p = self.link[p]
        return clone

    def _extend(self, last: int, c: int) -> int:
        trans, link, length = self.trans, self.link, self.length
        q = trans[last].get(c)
        if q is not None:
            if length[last] + 1 == length[q]:
                return q
            return self._clone(last, q, c)
        cur = len(length)
        trans.append({})
        link.append(0)
        length.append(length[last] + 1)
        p = last
        while p != -1 and c not in trans[p]:
            trans[p][c] = cur
            p = link[p]
        if p != -1:
            q = trans[p][c]
            if length[p] + 1 == length[q]:
                link[cur] = q
            else:
                link[cur] = self._clone(p, q, c)
        return cur

    def add(self, row: bytes) -> int:
        self._csr = None
        self._handle = None
        last = 0
        for c in row:
            last = self._extend(last, c)
        return last

    def csr(self):
        if self._csr is None:
            n = len(self.trans)
            offsets = np.zeros(n + 1, dtype=np.int64)
            offsets[1:] = np.cumsum([len(t) for t in self.trans])
            keys = np.empty(offsets[-1], dtype=np.int64)
            targets = np.empty(offsets[-1], dtype=np.int64)
            for s, t in enumerate(self.trans):
                lo = offsets[s]
                for k, (c, v) in enumerate(sorted(t.items())):
                    keys[lo + k] = c
                    targets[lo + k] = v
            link = np.asarray(self.link, dtype=np.int64)
            link[0] = 0
            self._csr = (offsets, keys, targets, link, np.asarray(self.length, dtype=np.int64))
        return self._csr

    def handle(self):
        if self._handle is None:
            self._handle = kernels.ms_prepare(self)
        return self._handle

    def scan(self, line: bytes, width: int) -> tuple[list[int], int]:
        return kernels.ms_scan(self.handle(), line, width)

    def scan_many(self, lines, width: int) -> tuple[list[list[int]], int]:
        return kernels.ms_scan_many(self.handle(), lines, width)


class RowIndex:
    def __init__(self, counters: Counters | None = None, backend_factory=SuffixAutomaton):
        self.counters = counters if counters is not None else Counters()
        self.width: int | None = None
        self._factory = backend_factory
        self.backend: SuffixBackend = backend_factory()
        self.epoch = 0
        self._by_content: dict[bytes, int] = {}
        self._content: dict[int, bytes] = {}
        self._count: dict[int, int] = {}
        self._handle_name: dict[int, int] = {}
        self._name_handle: dict[int, int] = {}
        self._retired: set[bytes] = set()
        self._next_name = 1

    def __len__(self) -> int:
        return len(self._content)

    def __contains__(self, name: int) -> bool:
        return name in self._content

    def _live(self, name: int) -> bytes:
        row = self._content.get(name)
        if row is None:
            raise KeyError(f"row name {name} is not live")
        return row

    def insert_row(self, row: bytes) -> int:
        row = bytes(row)
        if self.width is None:
            self.width = len(row)
        elif len(row) != self.width:
            raise ValueError(f"row width {len(row)} != index width {self.width}")
        self.counters.tau += len(row)
        name = self._by_content.get(row)
        if name is not None:
            self._count[name] += 1
            return name
        name = self._next_name
        self._next_name += 1
        handle = self.backend.add(row)
        self._retired.discard(row)
        self._by_content[row] = name
        self._content[name] = row
        self._count[name] = 1
        self._handle_name[handle] = name
        self._name_handle[name] = handle
        return name

    def remove_row(self, name: int) -> None:
        row = self._live(name)
        self.counters.tau += 1
        self._count[name] -= 1
        if self._count[name]:
            return
        del self._count[name], self._content[name], self._by_content[row]
        del self._handle_name[self._name_handle.pop(name)]
        self._retired.add(row)
        if len(self._retired) > len(self._content) / 2:
            self.rebuild()
        if not self._content:
            self.width = None

    def rebuild(self) -> None:
        """Drop retired rows physically by reindexing the live ones."""
        self.epoch += 1
        self._retired.clear()
        self.backend = self._factory()
        self._handle_name.clear()
        self._name_handle.clear()
        for name, row in self._content.items():
            h = self.backend.add(row)
            self._handle_name[h] = name
            self._name_handle[name] = h
        self.counters.tau += sum(map(len, self._content.values()))

    def name_of(self, row: bytes) -> int | None:
        return self._by_content.get(bytes(row))

    def count(self, name: int) -> int:
        return self._count.get(name, 0)

    def access_char(self, name: int, i: int) -> int:
        row = self._live(name)
        if not 1 <= i <= len(row):
            raise IndexError(f"column {i} outside [1, {len(row)}]")
        self.counters.tau += 1
        return row[i - 1]

    def row_bytes(self, name: int) -> bytes:
        """Extract a whole row (one traversal, charged as one query)."""
        row = self._live(name)
        self.counters.tau += 1
        return row

    def lcp_rows(self, a: int, i: int, b: int, j: int) -> int:
        ra, rb = self._live(a), self._live(b)
        if not (1 <= i <= len(ra) and 1 <= j <= len(rb)):
            raise IndexError("offset outside the row")
        self.counters.tau += 1
        k = 0
        limit = min(len(ra) - i + 1, len(rb) - j + 1)
        i -= 1
        j -= 1
        while k < limit and ra[i + k] == rb[j + k]:
            k += 1
        self.counters.comparisons += k + 1
        return k

    def name_text_positions(self, line: bytes) -> list[int | None]:
        """Name of the dictionary row ending at each 1-based position, else None.

        Index ``k - 1`` of the result refers to position ``k``.
        """
        width = self.width
        if width is None or len(line) < width or not self._content:
            return [None] * len(line)
        handles, work = self.backend.scan(line, width)
        self.last_inspections = work
        self.counters.tau += work
        self.counters.comparisons += work
        hn = self._handle_name
        return [None if h < 0 else hn.get(h) for h in handles]

    def name_text_positions_many(self, lines) -> list[list[int | None]]:
        """``name_text_positions`` for several lines in one kernel call."""
        width = self.width
        if width is None or not self._content:
            return [[None] * len(line) for line in lines]
        handles, work = self.backend.scan_many(lines, width)
        self.last_inspections = work
        self.counters.tau += work
        self.counters.comparisons += work
        hn = self._handle_name
        return [[None if h < 0 else hn.get(h) for h in hs] for hs in handles]

    def live_names(self) -> set[int]:
        return set(self._content)
