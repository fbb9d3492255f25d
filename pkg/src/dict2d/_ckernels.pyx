# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled twins of the functions in ``_pykernels``."""

import numpy as np

cimport numpy as cnp
from libc.stdint cimport int64_t

cnp.import_array()


def prefix_function(seq):
    cdef Py_ssize_t n = len(seq), i, k = 0
    cdef list fail = [0] * n
    cdef list s = list(seq)
    for i in range(1, n):
        c = s[i]
        while k and s[k] != c:
            k = <Py_ssize_t>fail[k - 1]
        if s[k] == c:
            k += 1
        fail[i] = k
    return fail


def least_rotation(seq):
    cdef Py_ssize_t n = len(seq), j, i, k = 0
    cdef list s = list(seq)
    cdef Py_ssize_t[:] f = np.full(2 * n, -1, dtype=np.intp)
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


def naive_match(text_rows, pat_rows):
    cdef Py_ssize_t h = len(pat_rows), w = len(pat_rows[0])
    cdef Py_ssize_t n1 = len(text_rows)
    cdef Py_ssize_t n2 = len(text_rows[0]) if n1 else 0
    cdef Py_ssize_t r, c, i, k
    cdef const unsigned char[:] trow
    cdef const unsigned char[:] prow
    cdef bint ok
    cdef list out = []
    cdef list trows = [bytes(t) for t in text_rows]
    cdef list prows = [bytes(p) for p in pat_rows]
    for r in range(n1 - h + 1):
        for c in range(n2 - w + 1):
            ok = True
            for i in range(h):
                trow = trows[r + i]
                prow = prows[i]
                for k in range(w):
                    if trow[c + k] != prow[k]:
                        ok = False
                        break
                if not ok:
                    break
            if ok:
                out.append((r + 1, c + 1))
    return out


cdef class _Csr:
    """Sorted-key transition table plus per-state integer arrays."""

    cdef const int64_t[:] offsets
    cdef const int64_t[:] keys
    cdef const int64_t[:] targets
    cdef const int64_t[:] a  # fail / suffix link
    cdef const int64_t[:] b  # dictionary link / length
    cdef const int64_t[:] out_off
    cdef const int64_t[:] out_ids

    cdef inline int64_t step(self, int64_t state, int64_t c) noexcept nogil:
        cdef int64_t lo = self.offsets[state], hi = self.offsets[state + 1], mid
        while lo < hi:
            mid = (lo + hi) >> 1
            if self.keys[mid] < c:
                lo = mid + 1
            elif self.keys[mid] > c:
                hi = mid
            else:
                return self.targets[mid]
        return -1


def ac_prepare(auto):
    offsets, keys, targets, fail, dlink, out_off, out_ids = auto.csr()
    cdef _Csr t = _Csr.__new__(_Csr)
    t.offsets, t.keys, t.targets = offsets, keys, targets
    t.a, t.b, t.out_off, t.out_ids = fail, dlink, out_off, out_ids
    return t


def ms_prepare(sam):
    offsets, keys, targets, link, length = sam.csr()
    cdef _Csr t = _Csr.__new__(_Csr)
    t.offsets, t.keys, t.targets = offsets, keys, targets
    t.a, t.b = link, length
    return t


cdef int64_t[:] _as_symbols(text):
    if isinstance(text, (bytes, bytearray)):
        return np.frombuffer(text, dtype=np.uint8).astype(np.int64)
    return np.asarray(text, dtype=np.int64)


cdef int64_t _ac_run(_Csr t, int64_t[:] text, list hits):
    cdef Py_ssize_t n = text.shape[0], pos
    cdef int64_t state = 0, nxt, s, c, steps = 0, q
    for pos in range(n):
        c = text[pos]
        while True:
            steps += 1
            nxt = t.step(state, c)
            if nxt >= 0:
                state = nxt
                break
            if state == 0:
                break
            state = t.a[state]
        s = state if t.out_off[state + 1] > t.out_off[state] else t.b[state]
        while s > 0:
            for q in range(t.out_off[s], t.out_off[s + 1]):
                hits.append((pos + 1, t.out_ids[q]))
            s = t.b[s]
    return steps


def ac_scan(_Csr t, text):
    cdef list hits = []
    steps = _ac_run(t, _as_symbols(text), hits)
    return hits, steps


def ac_scan_many(_Csr t, texts):
    cdef list result = []
    cdef list hits
    cdef int64_t steps = 0
    for text in texts:
        hits = []
        steps += _ac_run(t, _as_symbols(text), hits)
        result.append(hits)
    return result, steps


cdef int64_t _ms_run(_Csr t, const unsigned char[:] s, int64_t width, list res):
    cdef Py_ssize_t n = s.shape[0], pos
    cdef int64_t state = 0, cur = 0, nxt, inspections = 0
    for pos in range(n):
        while True:
            inspections += 1
            nxt = t.step(state, s[pos])
            if nxt >= 0:
                state = nxt
                cur += 1
                break
            if state == 0:
                cur = 0
                break
            state = t.a[state]
            cur = t.b[state]
        res.append(state if cur == width else -1)
    return inspections


def ms_scan(_Csr t, line, int64_t width):
    cdef list res = []
    inspections = _ms_run(t, bytes(line), width, res)
    return res, inspections


def ms_scan_many(_Csr t, lines, int64_t width):
    cdef list result = []
    cdef list res
    cdef int64_t inspections = 0
    for line in lines:
        res = []
        inspections += _ms_run(t, bytes(line), width, res)
        result.append(res)
    return result, inspections
