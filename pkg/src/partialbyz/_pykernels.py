"""Pure-Python kernels: local-majority filters, view transform, recursive
majority decision.

Same contracts as the compiled module ``partialbyz._ckernels``; the
active implementation is picked at import time by :mod:`partialbyz.kernels`.
Loops are written to mirror the compiled code path closely so the two can
be benchmarked and cross-checked against each other.

Conventions shared by both backends:

* ``vals`` is the dense int8 buffer of a view with ``k`` rounds, layer
  ``l`` (paths with tail length ``l``) starting at ``offsets[l]``.
* ``window`` is 3 for the three-round filter, 2 for the two-round one.
* A filter invocation is addressed by the prefix tail value ``pref_val``
  (tail length ``i``) and the relay suffix value ``s_val`` (length
  ``slen``); the prefix's last label is ``pref_val % n`` except for the
  bare transmitter prefix.
"""

from __future__ import annotations

import numpy as np


def lm_single(vals, offsets, n, nsym, transmitter, m, b, window, i, pref_val, slen, s_val):
    pi = pref_val % n if i > 0 else transmitter
    pw = n**slen
    if n == 1:
        # singleton system: no relays exist, the directly received
        # coordinate is all the information there is
        return vals[int(offsets[i + slen]) + pref_val * pw + s_val]
    if window == 3:
        # Stage one: per candidate relay a, count the (n-1)-entry multiset
        # over second relays c; a value joins S only when it is the unique
        # one reaching the n-m-b-1 threshold.
        thr = n - m - b - 1
        base = int(offsets[i + 2 + slen]) + s_val
        s_counts = [0] * nsym
        s_total = 0
        for a in range(n):
            if a == pi:
                continue
            counts = [0] * nsym
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
    # Two-round filter: strict majority over the n-1 direct entries.
    base = int(offsets[i + 1 + slen]) + s_val
    counts = [0] * nsym
    for a in range(n):
        if a == pi:
            continue
        counts[vals[base + (pref_val * n + a) * pw]] += 1
    best = 0
    for v in range(1, nsym):
        if counts[v] > counts[best]:
            best = v
    return best if 2 * counts[best] > n - 1 else 0


def view_transform_values(vals, offsets, n, nsym, transmitter, m, b, k, window):
    """Iterated local-majority pass over a full view buffer.

    Iteration i overwrites every coordinate prefix·s (suffix length up to
    k-window-i) with the filter output read from the previous iteration's
    buffer; returns the final full-size buffer (callers truncate layers).
    """
    cur = np.array(vals, dtype=np.int8)
    for i in range(k - window, -1, -1):
        new = cur.copy()
        for pref_val in range(n**i):
            for slen in range(k - window - i + 1):
                woff = int(offsets[i + slen]) + pref_val * n**slen
                for s_val in range(n**slen):
                    new[woff + s_val] = lm_single(
                        cur, offsets, n, nsym, transmitter, m, b, window, i, pref_val, slen, s_val
                    )
        cur = new
    return cur


def om_decide_values(vals, offsets, n, nsym, transmitter, rounds):
    """Recursive-majority decision over the distinct-label path tree.

    A path resolves to its stored value at depth ``rounds``+1 or when no
    unused process remains; otherwise to the strict majority of its
    children with the empty value as fallback.
    """

    def resolve(tail_val, tail_len, used):
        stored = int(vals[int(offsets[tail_len]) + tail_val])
        if tail_len == rounds:
            return stored
        counts = [0] * nsym
        total = 0
        for q in range(n):
            if used >> q & 1:
                continue
            counts[resolve(tail_val * n + q, tail_len + 1, used | (1 << q))] += 1
            total += 1
        if total == 0:
            return stored
        best = 0
        for v in range(1, nsym):
            if counts[v] > counts[best]:
                best = v
        return best if 2 * counts[best] > total else 0

    return resolve(0, 0, 1 << transmitter)
