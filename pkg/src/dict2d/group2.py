"""Engine for patterns with at least one row of large period.

Such a row (the filter row) occurs at most a few times per block row, so
its occurrences give a small candidate set.  Candidates in one column are
dueled vertically (LCP of name columns plus a witness-tree mismatch
position), then a top-down sweep lays each candidate's expected row names
as labels, duels horizontally overlapping labels and compares every
covered text byte against exactly one pattern byte.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .core import Counters, DictionaryError, PatternMatrix
from .dyn_dict_1d import DynMatcher
from .periodicity import Group, classify_pattern
from .rmq import SparseTable
from .row_index import RowIndex
from .witness_tree import WitnessTree


@dataclass
class Group2Pattern:
    id: int
    height: int
    filter_row: int  # 1-based
    row_names: tuple[int, ...]  # witness-tree names
    row_index_names: tuple[int, ...]


@dataclass
class CandidateState:
    pattern: int
    x: int  # 1-based top row in the block
    j: int  # 1-based left column in the block
    height: int
    rows_verified: int = 0
    alive: bool = True


class NameSuffixIndex:
    """LCP queries between suffixes of the patterns' name columns.

    A generalized suffix array (unique negative separators) with a Kasai LCP
    array and a sparse table.  Updates only mark it stale; :meth:`refresh`
    rebuilds it, and queries made while stale compare names directly.
    """

    def __init__(self) -> None:
        self.seqs: dict[int, tuple[int, ...]] = {}
        self.stale = False
        self.rebuilds = 0
        self._start: dict[int, int] = {}
        self._rank: list[int] = []
        self._lcp: SparseTable | None = None
        self.work = 0

    def add(self, pid: int, seq: Sequence[int]) -> None:
        self.seqs[pid] = tuple(seq)
        self.stale = True

    def remove(self, pid: int) -> None:
        del self.seqs[pid]
        self.stale = True

    def refresh(self) -> None:
        if not self.stale:
            return
        self.stale = False
        self.rebuilds += 1
        text: list[int] = []
        self._start = {}
        for sep, (pid, seq) in enumerate(self.seqs.items(), 1):
            self._start[pid] = len(text)
            text.extend(seq)
            text.append(-sep)
        n = len(text)
        self.work += n * max(1, n.bit_length())
        if not n:
            self._rank, self._lcp = [], None
            return
        sa = _suffix_array(text)
        rank = [0] * n
        for i, s in enumerate(sa):
            rank[s] = i
        lcp = [0] * n  # lcp[i] = LCP(sa[i-1], sa[i])
        k = 0
        for i in range(n):
            if rank[i] == 0:
                k = 0
                continue
            j = sa[rank[i] - 1]
            while i + k < n and j + k < n and text[i + k] == text[j + k] and text[i + k] >= 0:
                k += 1
            lcp[rank[i]] = k
            if k:
                k -= 1
        self._rank = rank
        self._lcp = SparseTable(lcp, min)

    def lcp(self, a: int, i: int, b: int, j: int) -> int:
        """LCP of pattern ``a``'s names from row ``i`` and ``b``'s from row ``j``."""
        sa_, sb = self.seqs[a], self.seqs[b]
        if self.stale:
            k = 0
            while i - 1 + k < len(sa_) and j - 1 + k < len(sb) and sa_[i - 1 + k] == sb[j - 1 + k]:
                k += 1
            self.work += k + 1
            return k
        self.work += 1
        p, q = self._start[a] + i - 1, self._start[b] + j - 1
        if p == q:
            return len(sa_) - i + 1
        ra, rb = self._rank[p], self._rank[q]
        if ra > rb:
            ra, rb = rb, ra
        return self._lcp.query(ra + 1, rb + 1)


def _suffix_array(text: list[int]) -> list[int]:
    """Prefix-doubling suffix array, O(n log^2 n)."""
    n = len(text)
    rank = list(text)
    sa = list(range(n))
    k = 1
    while True:
        key = [(rank[i], rank[i + k] if i + k < n else -(1 << 62)) for i in range(n)]
        sa.sort(key=key.__getitem__)
        new = [0] * n
        for t in range(1, n):
            new[sa[t]] = new[sa[t - 1]] + (key[sa[t]] != key[sa[t - 1]])
        rank = new
        if rank[sa[-1]] == n - 1:
            return sa
        k *= 2


class Group2Engine:
    def __init__(self, row_index: RowIndex, counters: Counters | None = None):
        self.counters = counters if counters is not None else Counters()
        self.row_index = row_index
        self.width: int | None = None
        self.witness = WitnessTree()
        self.filter = DynMatcher()
        self.names = NameSuffixIndex()
        self.patterns: dict[int, Group2Pattern] = {}
        self._fid: dict[int, int] = {}  # pattern id -> filter-matcher id
        self._pid: dict[int, int] = {}
        self._seen = 0

    def __len__(self) -> int:
        return len(self.patterns)

    def _charge(self) -> None:
        w = self.filter.work + self.witness.inspections + self.names.work
        self.counters.comparisons += w - self._seen
        self._seen = w

    def preprocess_pattern(self, P: PatternMatrix, row_index_names: Sequence[int]) -> Group2Pattern:
        cls = classify_pattern(P.rows)
        if cls.group is not Group.II:
            raise DictionaryError(f"pattern {P.id} is not in Group II")
        if self.width is not None and P.width != self.width:
            raise DictionaryError("width mismatch")
        self.width = P.width
        names = tuple(self.witness.insert_string(r) for r in P.rows)
        g = Group2Pattern(P.id, P.height, cls.filter_row, names, tuple(row_index_names))
        fid = self.filter.insert_pattern(P.rows[cls.filter_row - 1])
        self._fid[P.id] = fid
        self._pid[fid] = P.id
        self.names.add(P.id, names)
        self.patterns[P.id] = g
        self.counters.comparisons += P.height * P.width  # period computations
        self._charge()
        return g

    def remove_pattern(self, pid: int) -> None:
        g = self.patterns.pop(pid, None)
        if g is None:
            raise DictionaryError(f"unknown Group II pattern {pid}")
        for n in g.row_names:
            self.witness.remove_string(n)
        fid = self._fid.pop(pid)
        del self._pid[fid]
        self.filter.remove_pattern(fid)
        self.names.remove(pid)
        if not self.patterns:
            self.width = None
        self._charge()

    def prepare(self) -> None:
        """Bring the name-suffix index up to date before a search."""
        self.names.refresh()
        self._charge()

    # -- text scanning -------------------------------------------------

    def find_candidates(self, rows: Sequence[bytes], row_limit=None, col_limit=None) -> list[CandidateState]:
        m = self.width
        h, W = len(rows), len(rows[0])
        out = []
        for r, hits in enumerate(self.filter.scan_hits_many(rows), 1):
            for e, fid in hits:
                g = self.patterns[self._pid[fid]]
                x, j = r - g.filter_row + 1, e - m + 1
                if x < 1 or x + g.height - 1 > h or j + m - 1 > W:
                    continue
                if (row_limit is not None and x > row_limit) or (col_limit is not None and j > col_limit):
                    continue
                out.append(CandidateState(g.id, x, j, g.height))
        self._charge()
        self.counters.candidates += len(out)
        return out

    def _duel_text(self, rows, y: int, col: int, a: CandidateState, ra: int, b: CandidateState, rb: int, w: int) -> None:
        """Kill whichever of a, b disagrees with the text at (y, col)."""
        self.counters.duels += 1
        t = rows[y - 1][col - 1]
        self.counters.comparisons += 1
        if self.row_index.access_char(ra, w) != t:
            a.alive = False
        if self.row_index.access_char(rb, w) != t:
            b.alive = False

    def vertical_duel(self, rows, a: CandidateState, b: CandidateState) -> None:
        """Resolve two same-column candidates with overlapping rows (a above b)."""
        ga, gb = self.patterns[a.pattern], self.patterns[b.pattern]
        off = b.x - a.x + 1
        overlap = min(a.x + ga.height, b.x + gb.height) - b.x
        k = self.names.lcp(a.pattern, off, b.pattern, 1)
        if k >= overlap:
            return
        na, nb = ga.row_names[off - 1 + k], gb.row_names[k]
        w = self.witness.witness_query(na, nb)
        self._duel_text(
            rows, b.x + k, b.j + w - 1,
            a, ga.row_index_names[off - 1 + k],
            b, gb.row_index_names[k], w,
        )

    def vertical_duels(self, rows, cands: list[CandidateState]) -> list[CandidateState]:
        by_col: dict[int, list[CandidateState]] = {}
        for c in cands:
            by_col.setdefault(c.j, []).append(c)
        survivors = []
        for col in sorted(by_col):
            stack: list[CandidateState] = []
            for b in sorted(by_col[col], key=lambda c: (c.x, c.pattern)):
                while stack and b.alive:
                    a = stack[-1]
                    if a.x + a.height - 1 < b.x:
                        break
                    self.vertical_duel(rows, a, b)
                    if not a.alive:
                        stack.pop()
                    elif b.alive:
                        break
                if b.alive:
                    stack.append(b)
            survivors.extend(stack)
        return survivors

    def verify_sweep(self, rows: Sequence[bytes], survivors: list[CandidateState]) -> list[CandidateState]:
        """Row-by-row verification of vertically consistent candidates."""
        m = self.width
        rix = self.row_index
        starts: dict[int, list[CandidateState]] = {}
        for c in survivors:
            starts.setdefault(c.x, []).append(c)
        active: list[CandidateState] = []
        done = []
        for y in range(1, len(rows) + 1):
            active.extend(starts.get(y, ()))
            active = [c for c in active if c.alive and y < c.x + c.height]
            if not active:
                continue
            labels = sorted(
                ((c.j, self.patterns[c.pattern].row_index_names[y - c.x], c) for c in active),
                key=lambda t: (t[0], t[2].pattern, t[2].x),
            )
            self.counters.alloc(len(labels))
            # horizontal duels between adjacent overlapping labels
            stack: list[tuple[int, int, CandidateState]] = []
            for lab in labels:
                jb, nb, cb = lab
                while stack and cb.alive:
                    ja, na, ca = stack[-1]
                    if ja + m - 1 < jb:
                        break
                    off = jb - ja + 1
                    k = rix.lcp_rows(na, off, nb, 1)
                    if k >= m - off + 1:
                        break
                    self._hduel(rows, y, jb + k, ca, na, off + k, cb, nb, 1 + k)
                    if not ca.alive:
                        stack.pop()
                    elif cb.alive:
                        break
                if cb.alive:
                    stack.append(lab)
            # one pass: each covered text byte against one pattern byte
            text = rows[y - 1]
            frontier = 0
            bad = []
            for ja, na, ca in stack:
                pat = rix.row_bytes(na)
                first = max(ja, frontier + 1)
                for col in range(first, ja + m):
                    if text[col - 1] != pat[col - ja]:
                        bad.append(col)
                self.counters.comparisons += max(0, ja + m - first)
                frontier = max(frontier, ja + m - 1)
            if bad:
                bi = 0
                for ja, na, ca in stack:
                    while bi < len(bad) and bad[bi] < ja:
                        bi += 1
                    if bi < len(bad) and bad[bi] <= ja + m - 1:
                        ca.alive = False
            self.counters.free(len(labels))
            for c in active:
                if c.alive:
                    c.rows_verified = y - c.x + 1
                    if c.rows_verified == c.height:
                        done.append(c)
        return done

    def _hduel(self, rows, y, col, a, na, ia, b, nb, ib) -> None:
        self.counters.duels += 1
        self.counters.comparisons += 1
        t = rows[y - 1][col - 1]
        if self.row_index.access_char(na, ia) != t:
            a.alive = False
        if self.row_index.access_char(nb, ib) != t:
            b.alive = False

    def search_block(self, rows: Sequence[bytes], row_limit=None, col_limit=None) -> list[tuple[int, int, int]]:
        if not self.patterns or len(rows[0]) < self.width:
            return []
        cands = self.find_candidates(rows, row_limit, col_limit)
        if not cands:
            return []
        self.counters.alloc(len(cands))
        survivors = self.vertical_duels(rows, cands)
        found = [(c.x, c.j, c.pattern) for c in self.verify_sweep(rows, survivors)]
        self.counters.free(len(cands))
        self._charge()
        return found
