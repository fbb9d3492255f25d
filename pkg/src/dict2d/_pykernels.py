"""Pure-Python implementations of the hot loops.

Every function here has a twin with the same signature in ``_ckernels.pyx``.
Automaton-like arguments are duck-typed: the Python versions read the
per-state ``dict`` transition maps, the compiled versions read the CSR
arrays produced by ``.csr()``.  ``*_prepare`` turns an automaton into the
handle the scan functions take; here that is the automaton itself.
"""

from __future__ import annotations

from typing import Sequence


def prefix_function(seq: Sequence) -> list[int]:
    """Classic KMP border array: ``fail[i]`` = longest proper border of seq[:i+1]."""
    n = len(seq)
    fail = [0] * n
    k = 0
    for i in range(1, n):
        c = seq[i]
        while k and seq[k] != c:
            k = fail[k - 1]
        if seq[k] == c:
            k += 1
        fail[i] = k
    return fail


def least_rotation(s: Sequence) -> int:
    """Booth's algorithm: 0-based start of the least rotation of ``s``.

    Ties (non-primitive input) resolve to the smallest start.
    """
    n = len(s)
    f = [-1] * (2 * n)
    k = 0
    for j in range(1, 2 * n):
        sj = s[j % n]
        i = f[j - k - 1]
        while i != -1 and sj != s[(k + i + 1) % n]:
            if sj < s[(k + i + 1) % n]:
                k = j - i - 1
            i = f[i]
        if i == -1 and sj != s[(k + i + 1) % n]:
            if sj < s[(k + i + 1) % n]:
                k = j
            f[j - k] = -1
        else:
            f[j - k] = i + 1
    return k


def naive_match(text_rows: Sequence[bytes], pat_rows: Sequence[bytes]) -> list[tuple[int, int]]:
    """All 1-based top-left positions where ``pat_rows`` equals the text window."""
    h, w = len(pat_rows), len(pat_rows[0])
    n1 = len(text_rows)
    n2 = len(text_rows[0]) if n1 else 0
    out = []
    for r in range(n1 - h + 1):
        for c in range(n2 - w + 1):
            for i in range(h):
                trow, prow = text_rows[r + i], pat_rows[i]
                ok = True
                for k in range(w):
                    if trow[c + k] != prow[k]:
                        ok = False
                        break
                if not ok:
                    break
            else:
                out.append((r + 1, c + 1))
    return out


def ac_prepare(auto):
    return auto


def ms_prepare(sam):
    return sam


def ac_scan(auto, text: Sequence[int]) -> tuple[list[tuple[int, int]], int]:
    """Run an Aho-Corasick automaton; returns ([(end, pattern id)], steps)."""
    goto, fail, out, dlink = auto.goto, auto.fail, auto.out, auto.dlink
    state = 0
    steps = 0
    hits = []
    for pos, c in enumerate(text, 1):
        while True:
            steps += 1
            nxt = goto[state].get(c)
            if nxt is not None:
                state = nxt
                break
            if state == 0:
                break
            state = fail[state]
        s = state if out[state] else dlink[state]
        while s > 0:
            for pid in out[s]:
                hits.append((pos, pid))
            s = dlink[s]
    return hits, steps


def ms_scan(sam, line: bytes, width: int) -> tuple[list[int], int]:
    """Matching-statistics pass over ``line`` against a suffix automaton.

    Returns, per 0-based position, the automaton state whose longest string
    is the full ``width``-long window ending there (or -1), and the number
    of transition inspections performed.
    """
    trans, link, length = sam.trans, sam.link, sam.length
    state, cur = 0, 0
    inspections = 0
    res = [-1] * len(line)
    for pos, c in enumerate(line):
        while True:
            inspections += 1
            nxt = trans[state].get(c)
            if nxt is not None:
                state = nxt
                cur += 1
                break
            if state == 0:
                cur = 0
                break
            state = link[state]
            cur = length[state]
        if cur == width:
            res[pos] = state
    return res, inspections


def ac_scan_many(auto, texts) -> tuple[list[list[tuple[int, int]]], int]:
    result, total = [], 0
    for text in texts:
        hits, steps = ac_scan(auto, text)
        result.append(hits)
        total += steps
    return result, total


def ms_scan_many(sam, lines, width: int) -> tuple[list[list[int]], int]:
    result, total = [], 0
    for line in lines:
        res, steps = ms_scan(sam, line, width)
        result.append(res)
        total += steps
    return result, total
