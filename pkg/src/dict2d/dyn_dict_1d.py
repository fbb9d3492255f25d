"""Dynamic 1D multi-pattern matching over integer symbols.

Patterns live in a logarithmic sequence of immutable Aho-Corasick automata
(tier ``k`` holds at most ``2**k`` patterns).  Inserting a pattern merges
equal-sized tiers like a binary counter; removal tombstones the pattern and
purges physically once the dead outnumber the live.
"""

from __future__ import annotations

from collections import deque
from typing import Callable, Iterable, Sequence

import numpy as np

from . import kernels


class _Automaton:
    """Immutable Aho-Corasick automaton with separate goto/fail/report links."""

    __slots__ = ("ids", "size", "goto", "fail", "out", "dlink", "_csr", "_handle")

    def __init__(self, patterns: Iterable[tuple[int, Sequence[int]]]):
        goto: list[dict] = [{}]
        out: list[list[int]] = [[]]
        ids = []
        size = 0
        for pid, seq in patterns:
            ids.append(pid)
            size += len(seq)
            s = 0
            for c in seq:
                nxt = goto[s].get(c)
                if nxt is None:
                    nxt = len(goto)
                    goto[s][c] = nxt
                    goto.append({})
                    out.append([])
                s = nxt
            out[s].append(pid)
        n = len(goto)
        fail = [0] * n
        dlink = [0] * n
        queue = deque(goto[0].values())
        while queue:
            s = queue.popleft()
            for c, t in goto[s].items():
                f = fail[s]
                while f and c not in goto[f]:
                    f = fail[f]
                f = goto[f].get(c, 0)
                fail[t] = f
                dlink[t] = f if out[f] else dlink[f]
                queue.append(t)
        self.ids = ids
        self.size = size
        self.goto = goto
        self.fail = fail
        self.out = [tuple(o) for o in out]
        self.dlink = dlink
        self._csr = None
        self._handle = None

    def csr(self):
        """CSR arrays for the compiled scan kernel (built once, on demand)."""
        if self._csr is None:
            n = len(self.goto)
            offsets = np.zeros(n + 1, dtype=np.int64)
            for s, g in enumerate(self.goto):
                offsets[s + 1] = offsets[s] + len(g)
            keys = np.empty(offsets[-1], dtype=np.int64)
            targets = np.empty(offsets[-1], dtype=np.int64)
            out_off = np.zeros(n + 1, dtype=np.int64)
            for s, o in enumerate(self.out):
                out_off[s + 1] = out_off[s] + len(o)
            out_ids = np.empty(out_off[-1], dtype=np.int64)
            for s, g in enumerate(self.goto):
                items = sorted(g.items())
                lo = offsets[s]
                for k, (c, t) in enumerate(items):
                    keys[lo + k] = c
                    targets[lo + k] = t
                out_ids[out_off[s]:out_off[s + 1]] = self.out[s]
            self._csr = (
                offsets,
                keys,
                targets,
                np.asarray(self.fail, dtype=np.int64),
                np.asarray(self.dlink, dtype=np.int64),
                out_off,
                out_ids,
            )
        return self._csr

    def handle(self):
        if self._handle is None:
            self._handle = kernels.ac_prepare(self)
        return self._handle

    def scan(self, text: Sequence[int]) -> tuple[list[tuple[int, int]], int]:
        return kernels.ac_scan(self.handle(), text)

    def scan_many(self, texts) -> tuple[list[list[tuple[int, int]]], int]:
        return kernels.ac_scan_many(self.handle(), texts)


class DynMatcher:
    """Insert/remove patterns of integer symbols; scan texts for all of them."""

    def __init__(self) -> None:
        self.tiers: list[_Automaton | None] = []
        self.patterns: dict[int, tuple] = {}  # every physically present pattern
        self.tombstones: set[int] = set()
        self.live_count = 0
        self.dead_count = 0
        self.work = 0  # symbol steps spent on construction and scanning
        self._next_id = 1

    def __len__(self) -> int:
        return self.live_count

    def __contains__(self, pid: int) -> bool:
        return pid in self.patterns and pid not in self.tombstones

    def insert_pattern(self, seq: Sequence[int]) -> int:
        if not len(seq):
            raise ValueError("patterns must be non-empty")
        pid = self._next_id
        self._next_id += 1
        seq = tuple(seq)
        self.patterns[pid] = seq
        self.live_count += 1
        carry = [(pid, seq)]
        k = 0
        while k < len(self.tiers) and self.tiers[k] is not None:
            carry.extend(
                (q, self.patterns[q]) for q in self.tiers[k].ids if q not in self.tombstones
            )
            self.tiers[k] = None
            k += 1
        if k == len(self.tiers):
            self.tiers.append(None)
        self._build(k, carry)
        return pid

    def _build(self, k: int, items: list) -> None:
        auto = _Automaton(items)
        self.work += auto.size
        self.tiers[k] = auto

    def remove_pattern(self, pid: int) -> None:
        if pid not in self:
            raise KeyError(f"pattern {pid} is not live")
        self.tombstones.add(pid)
        self.live_count -= 1
        self.dead_count += 1
        if self.dead_count > self.live_count:
            self.rebuild()

    def rebuild(self) -> None:
        """Purge tombstones and repack every live pattern into fresh tiers."""
        for pid in self.tombstones:
            del self.patterns[pid]
        self.tombstones.clear()
        self.dead_count = 0
        live = list(self.patterns.items())
        self.tiers = []
        # binary decomposition of the live count, largest tier first
        n = len(live)
        start = 0
        for k in reversed(range(n.bit_length())):
            if n >> k & 1:
                while len(self.tiers) <= k:
                    self.tiers.append(None)
                self._build(k, live[start:start + (1 << k)])
                start += 1 << k

    def scan_hits(self, text: Sequence[int]) -> list[tuple[int, int]]:
        """All (end position, pattern id) pairs, sorted by end then id."""
        hits: list[tuple[int, int]] = []
        if not self.live_count:
            return hits
        dead = self.tombstones
        for auto in self.tiers:
            if auto is None:
                continue
            found, steps = auto.scan(text)
            self.work += steps
            if dead:
                hits.extend(h for h in found if h[1] not in dead)
            else:
                hits.extend(found)
        hits.sort()
        return hits

    def scan_hits_many(self, texts: Sequence[Sequence[int]]) -> list[list[tuple[int, int]]]:
        """``scan_hits`` for every text, with one kernel call per tier."""
        out: list[list[tuple[int, int]]] = [[] for _ in texts]
        if not self.live_count or not texts:
            return out
        dead = self.tombstones
        for auto in self.tiers:
            if auto is None:
                continue
            found, steps = auto.scan_many(texts)
            self.work += steps
            for acc, hits in zip(out, found):
                if dead:
                    acc.extend(h for h in hits if h[1] not in dead)
                else:
                    acc.extend(hits)
        for acc in out:
            acc.sort()
        return out

    def scan(self, text: Sequence[int], emit: Callable[[int, int], None]) -> None:
        for e, pid in self.scan_hits(text):
            emit(e, pid)

    def tier_sizes(self) -> list[int]:
        return [0 if t is None else len(t.ids) for t in self.tiers]
