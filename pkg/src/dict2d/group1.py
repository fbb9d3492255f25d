"""Engine for patterns whose rows are all periodic with small periods.

Rows are linearized into Lyndon-class names (plus period and Lyndon
position), so a text block becomes a column of names scanned by a dynamic
1D matcher.  A candidate row is then verified by aligning periods: either
one canonical signature for the whole pattern, or, for tall patterns with a
periodic name column, per-p_block signatures matched with KMP.  Width is
checked with range min/max over the rows' periodic extents.
"""

from __future__ import annotations

import operator
from dataclasses import dataclass, field
from typing import Sequence

from . import kernels
from .core import Counters, DictionaryError, PatternMatrix
from .dyn_dict_1d import DynMatcher
from .periodicity import (
    CanonicalSignature,
    Group,
    LcmTable,
    PBlockToken,
    RowMeta,
    SignatureNamer,
    build_lcm_table,
    canonical_signature,
    canonize_row,
    classify_pattern,
    compute_period,
    group_threshold,
    lyndon_shift,
    tokenize_pblocks,
)
from .rmq import SparseTable
from .witness_tree import WitnessTree

NULL = -1
# patterns up to this many times m_bar tall use the single-signature path
PBLOCK_HEIGHT_FACTOR = 2


@dataclass
class Group1Pattern:
    id: int
    height: int
    metas: list[RowMeta]
    d_prime: tuple[int, ...]
    lcm: LcmTable
    pi: int
    sig: CanonicalSignature | None = None
    tokens: list[PBlockToken] = field(default_factory=list)
    token_sigs: list[CanonicalSignature] = field(default_factory=list)
    kmp: list[int] = field(default_factory=list)

    @property
    def uses_pblocks(self) -> bool:
        return bool(self.tokens)

    @property
    def tail(self) -> int:
        return self.height - len(self.tokens) * self.pi if self.tokens else 0


def _kmp_find(pattern: Sequence, fail: Sequence[int], text: Sequence) -> list[int]:
    """0-based starts of every occurrence of ``pattern`` in ``text``."""
    m = len(pattern)
    out = []
    k = 0
    for i, c in enumerate(text):
        while k and pattern[k] != c:
            k = fail[k - 1]
        if pattern[k] == c:
            k += 1
        if k == m:
            out.append(i - m + 1)
            k = fail[k - 1]
    return out


def linearize_row(row: bytes, m: int, lyndon: WitnessTree) -> tuple[RowMeta, int]:
    """Periodicity record of one text-block row, plus characters inspected.

    The central window (columns ``W-m+1..m``) lies inside every width-m
    window of the row; a small period there extends to the row's maximal
    periodic extent.  Rows wider than ``ceil(3m/2)`` leave a window too
    short to pin down a period of up to m/4 and are rejected.
    """
    W = len(row)
    if W > -(-3 * m // 2):
        raise ValueError(f"block row of width {W} is wider than ceil(3*{m}/2)")
    if W < m:
        return RowMeta(0, 0, 0), 0
    lo, hi = W - m, m  # 0-based half-open central window
    window = row[lo:hi]
    q = compute_period(window)
    work = hi - lo
    if q > group_threshold(m):
        return RowMeta(0, 0, 0), work
    right = hi
    while right < W and row[right] == row[right - q]:
        right += 1
    left = lo - 1
    while left >= 0 and row[left] == row[left + q]:
        left -= 1
    work += (right - hi) + (lo - left)
    left += 1  # first 0-based column of the extent
    shift = lyndon_shift(window[:q])
    lyn = window[shift:shift + q]
    start = lo + shift  # 0-based column where the Lyndon word starts
    lwpos = left + (start - left) % q + 1
    canonical = (lyn * (m // q + 1))[:m]
    name = lyndon.lookup(canonical)
    work += m
    if name is None:
        return RowMeta(0, 0, 0), work
    return RowMeta(name, q, lwpos, left + 1, right), work


class Group1Engine:
    def __init__(self, counters: Counters | None = None, pblock_factor: int = PBLOCK_HEIGHT_FACTOR):
        self.counters = counters if counters is not None else Counters()
        self.pblock_factor = pblock_factor
        self.width: int | None = None
        self.lyndon = WitnessTree()
        self.namer = SignatureNamer()
        self.matcher = DynMatcher()
        self.patterns: dict[int, Group1Pattern] = {}
        self._mid: dict[int, int] = {}  # pattern id -> matcher id
        self._pid: dict[int, int] = {}  # matcher id -> pattern id
        self._seen = 0

    def __len__(self) -> int:
        return len(self.patterns)

    def _charge(self) -> None:
        w = self.matcher.work + self.lyndon.inspections
        self.counters.comparisons += w - self._seen
        self._seen = w

    def preprocess_pattern(self, P: PatternMatrix) -> Group1Pattern:
        if classify_pattern(P.rows).group is not Group.I:
            raise DictionaryError(f"pattern {P.id} is not in Group I")
        if self.width is not None and P.width != self.width:
            raise DictionaryError("width mismatch")
        self.width = m = P.width
        metas = []
        for row in P.rows:
            meta, canonical = canonize_row(row)
            meta.class_name = self.lyndon.insert_string(canonical)
            metas.append(meta)
        self.counters.comparisons += 2 * P.height * m
        d_prime = tuple(meta.class_name for meta in metas)
        pi = compute_period(d_prime)
        g = Group1Pattern(
            id=P.id,
            height=P.height,
            metas=metas,
            d_prime=d_prime,
            lcm=build_lcm_table([meta.period for meta in metas], 2 * m),
            pi=pi,
        )
        if 2 * pi <= P.height and P.height > self.pblock_factor * m:
            g.tokens, g.token_sigs = tokenize_pblocks(metas, pi, self.namer)
            g.kmp = kernels.prefix_function(g.tokens[1:])
        else:
            g.sig = canonical_signature([x.period for x in metas], [x.lwpos for x in metas])
        mid = self.matcher.insert_pattern(d_prime)
        self.patterns[P.id] = g
        self._mid[P.id] = mid
        self._pid[mid] = P.id
        self._charge()
        return g

    def remove_pattern(self, pid: int) -> None:
        g = self.patterns.pop(pid, None)
        if g is None:
            raise DictionaryError(f"unknown Group I pattern {pid}")
        for name in g.d_prime:
            self.lyndon.remove_string(name)
        mid = self._mid.pop(pid)
        del self._pid[mid]
        self.matcher.remove_pattern(mid)
        if not self.patterns:
            self.width = None
        self._charge()

    # -- text scanning -------------------------------------------------

    def linearize_block(self, rows: Sequence[bytes]) -> list[RowMeta]:
        metas = []
        work = 0
        for row in rows:
            meta, w = linearize_row(row, self.width, self.lyndon)
            metas.append(meta)
            work += w
        self.counters.comparisons += work
        return metas

    def find_candidates(self, metas: Sequence[RowMeta]) -> dict[int, list[int]]:
        """Pattern id -> sorted 1-based top rows where its name column occurs."""
        seq = [x.class_name or NULL for x in metas]
        out: dict[int, list[int]] = {}
        for e, mid in self.matcher.scan_hits(seq):
            pid = self._pid[mid]
            out.setdefault(pid, []).append(e - self.patterns[pid].height + 1)
        self._charge()
        return out

    def _columns(self, j0: int, L: int, lo: int, hi: int) -> list[int]:
        """Columns in [lo, hi] congruent to j0 modulo L."""
        if lo > hi:
            return []
        j = lo + (j0 - lo) % L
        return list(range(j, hi + 1, L))

    def verify_candidates(
        self,
        g: Group1Pattern,
        metas: Sequence[RowMeta],
        candidates: Sequence[int],
        col_limit: int | None = None,
        mode: str = "fast",
        rmq: tuple[SparseTable, SparseTable] | None = None,
    ) -> set[tuple[int, int]]:
        """(top row, column) occurrences in the block, 1-based.

        ``mode="normative"`` checks every column against every row's
        congruence directly; it is the reference for the fast paths.
        """
        if not candidates:
            return set()
        m = self.width
        if rmq is None:
            rmq = self.range_tables(metas)
        min_right, max_left = rmq
        h = g.height

        def window(r: int) -> tuple[int, int]:
            lo = max_left.query(r - 1, r - 1 + h)
            hi = min_right.query(r - 1, r - 1 + h) - m + 1
            if col_limit is not None:
                hi = min(hi, col_limit)
            return lo, hi

        out: set[tuple[int, int]] = set()
        # a row without a class cannot match; such tops are not real candidates
        candidates = [r for r in candidates if all(x.class_name for x in metas[r - 1:r - 1 + h])]
        if mode == "normative":
            for r in candidates:
                lo, hi = window(r)
                rows = metas[r - 1:r - 1 + h]
                for j in range(lo, hi + 1):
                    self.counters.comparisons += h
                    if all(
                        (j - (t.lwpos - p.lwpos + 1)) % p.period == 0 for t, p in zip(rows, g.metas)
                    ):
                        out.add((r, j))
            return out
        if g.uses_pblocks:
            return self._verify_pblocks(g, metas, candidates, window)
        sig = g.sig
        for r in candidates:
            rows = metas[r - 1:r - 1 + h]
            ts = canonical_signature([x.period for x in rows], [x.lwpos for x in rows])
            self.counters.comparisons += h
            if ts.residues != sig.residues:
                continue
            lo, hi = window(r)
            for j in self._columns(ts.z - sig.z + 1, sig.L, lo, hi):
                out.add((r, j))
        return out

    def _verify_pblocks(self, g: Group1Pattern, metas, candidates, window) -> set[tuple[int, int]]:
        pi, K, h = g.pi, len(g.tokens), g.height
        L = g.token_sigs[0].L
        z_first = g.token_sigs[0].z
        first_class = g.tokens[0].block_class
        rest = g.tokens[1:]
        tail_rows = g.metas[K * pi:]
        out: set[tuple[int, int]] = set()
        runs: list[list[int]] = []
        for r in sorted(candidates):
            if runs and r - runs[-1][-1] == pi:
                runs[-1].append(r)
            else:
                runs.append([r])
        for run in runs:
            r0 = run[0]
            span = metas[r0 - 1:run[-1] - 1 + h]
            tokens, sigs = tokenize_pblocks(span, pi, self.namer, insert=False)
            self.counters.comparisons += len(span)
            starts = set(_kmp_find(rest, g.kmp, tokens))
            for t in range(len(run)):
                if tokens[t].block_class != first_class or (t + 1) not in starts:
                    continue
                j0 = sigs[t].z - z_first + 1
                r = r0 + t * pi
                base = r - 1 + K * pi
                ok = True
                for q, p in enumerate(tail_rows):
                    tm = metas[base + q]
                    if tm.class_name != p.class_name or (j0 - (tm.lwpos - p.lwpos + 1)) % p.period:
                        ok = False
                        break
                self.counters.comparisons += len(tail_rows)
                if not ok:
                    continue
                lo, hi = window(r)
                for j in self._columns(j0, L, lo, hi):
                    out.add((r, j))
        return out

    def range_tables(self, metas: Sequence[RowMeta]) -> tuple[SparseTable, SparseTable]:
        min_right = SparseTable([x.right for x in metas], min)
        max_left = SparseTable([x.left for x in metas], max)
        return min_right, max_left

    def search_block(self, rows: Sequence[bytes], row_limit=None, col_limit=None) -> list[tuple[int, int, int]]:
        """Block-relative (top, col, pattern id) occurrences of Group I patterns."""
        if not self.patterns or len(rows[0]) < self.width:
            return []
        metas = self.linearize_block(rows)
        self.counters.alloc(len(metas))
        cands = self.find_candidates(metas)
        found = []
        if cands:
            rmq = self.range_tables(metas)
            cells = rmq[0].cells() + rmq[1].cells()
            self.counters.alloc(cells)
            for pid, tops in cands.items():
                if row_limit is not None:
                    tops = [r for r in tops if r <= row_limit]
                self.counters.candidates += len(tops)
                for r, j in self.verify_candidates(self.patterns[pid], metas, tops, col_limit, rmq=rmq):
                    found.append((r, j, pid))
            self.counters.free(cells)
        self.counters.free(len(metas))
        return found
