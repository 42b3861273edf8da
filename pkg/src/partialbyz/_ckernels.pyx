# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels; see ``partialbyz._pykernels`` for the reference
implementation and the shared conventions."""

import numpy as np

cimport numpy as cnp

cnp.import_array()

ctypedef cnp.int8_t val_t
ctypedef cnp.int64_t idx_t

DEF MAX_SYM = 16


cdef inline int _lm_single(const val_t[::1] vals, const idx_t[::1] offsets,
                           int n, int nsym, int transmitter, int m, int b,
                           int window, int i, long pref_val, int slen,
                           long s_val, long pw) noexcept nogil:
    cdef int pi = <int>(pref_val % n) if i > 0 else transmitter
    cdef long base, row
    cdef int a, c, v, best, qualifier, thr
    cdef int counts[MAX_SYM]
    cdef int s_counts[MAX_SYM]
    cdef int s_total = 0

    if n == 1:
        # singleton system: no relays exist, the directly received
        # coordinate is all the information there is
        return vals[offsets[i + slen] + pref_val * pw + s_val]

    if window == 3:
        thr = n - m - b - 1
        base = offsets[i + 2 + slen] + s_val
        for v in range(nsym):
            s_counts[v] = 0
        for a in range(n):
            if a == pi:
                continue
            for v in range(nsym):
                counts[v] = 0
            row = (pref_val * n + a) * n
            for c in range(n):
                if c == a:
                    continue
                counts[vals[base + (row + c) * pw]] += 1
            qualifier = -1
            for v in range(nsym):
                if counts[v] >= thr:
                    if qualifier >= 0:
                        qualifier = -2
                        break
                    qualifier = v
            if qualifier >= 0:
                s_counts[qualifier] += 1
                s_total += 1
        best = 0
        for v in range(1, nsym):
            if s_counts[v] > s_counts[best]:
                best = v
        return best if 2 * s_counts[best] > s_total else 0

    base = offsets[i + 1 + slen] + s_val
    for v in range(nsym):
        counts[v] = 0
    for a in range(n):
        if a == pi:
            continue
        counts[vals[base + (pref_val * n + a) * pw]] += 1
    best = 0
    for v in range(1, nsym):
        if counts[v] > counts[best]:
            best = v
    return best if 2 * counts[best] > n - 1 else 0


def lm_single(vals, offsets, int n, int nsym, int transmitter, int m, int b,
              int window, int i, long pref_val, int slen, long s_val):
    if nsym > MAX_SYM:
        raise ValueError(f"domain larger than {MAX_SYM} symbols")
    cdef const val_t[::1] v = vals
    cdef const idx_t[::1] off = offsets
    cdef long pw = n**slen
    return _lm_single(v, off, n, nsym, transmitter, m, b, window, i,
                      pref_val, slen, s_val, pw)


def view_transform_values(vals, offsets, int n, int nsym, int transmitter,
                          int m, int b, int k, int window):
    if nsym > MAX_SYM:
        raise ValueError(f"domain larger than {MAX_SYM} symbols")
    cur = np.array(vals, dtype=np.int8)
    cdef const idx_t[::1] off = offsets
    cdef val_t[::1] new_mv
    cdef const val_t[::1] cur_mv
    cdef int i, slen
    cdef long pref_val, s_val, woff, pw, npref
    for i in range(k - window, -1, -1):
        new = cur.copy()
        new_mv = new
        cur_mv = cur
        npref = n**i
        with nogil:
            for pref_val in range(npref):
                for slen in range(k - window - i + 1):
                    pw = 1
                    for _ in range(slen):
                        pw *= n
                    woff = off[i + slen] + pref_val * pw
                    for s_val in range(pw):
                        new_mv[woff + s_val] = <val_t>_lm_single(
                            cur_mv, off, n, nsym, transmitter, m, b, window,
                            i, pref_val, slen, s_val, pw)
        cur = new
    return cur


cdef int _om_resolve(const val_t[::1] vals, const idx_t[::1] offsets, int n,
                     int nsym, int rounds, long tail_val, int tail_len,
                     unsigned long long used) noexcept nogil:
    cdef int stored = vals[offsets[tail_len] + tail_val]
    if tail_len == rounds:
        return stored
    cdef int counts[MAX_SYM]
    cdef int total = 0
    cdef int q, v, best
    for v in range(nsym):
        counts[v] = 0
    for q in range(n):
        if used >> q & 1:
            continue
        counts[_om_resolve(vals, offsets, n, nsym, rounds, tail_val * n + q,
                           tail_len + 1, used | (1ULL << q))] += 1
        total += 1
    if total == 0:
        return stored
    best = 0
    for v in range(1, nsym):
        if counts[v] > counts[best]:
            best = v
    return best if 2 * counts[best] > total else 0


def om_decide_values(vals, offsets, int n, int nsym, int transmitter, int rounds):
    if nsym > MAX_SYM:
        raise ValueError(f"domain larger than {MAX_SYM} symbols")
    if n > 64:
        raise ValueError("compiled majority recursion supports at most 64 processes")
    cdef const val_t[::1] v = vals
    cdef const idx_t[::1] off = offsets
    return _om_resolve(v, off, n, nsym, rounds, 0, 0, 1ULL << transmitter)
