"""Compiled griddability test, the same search as ``grid._Search`` without cut reporting."""

from __future__ import annotations

import numpy as np
from numba import njit


@njit(cache=True)
def _fill_table(v, pos_sorted_vals, sign, dot, c, start, end, out):
    # out[r, lo] = largest hi such that column points with values in (lo, hi] fit cell (c, r)
    n = v.shape[0]
    R = sign.shape[1]
    k = end - start
    vals = np.empty(k, np.int64)
    poss = np.empty(k, np.int64)
    j = 0
    for val in range(1, n + 1):
        p = pos_sorted_vals[val]
        if start <= p < end:
            vals[j] = val
            poss[j] = p
            j += 1
    first = np.empty(n + 1, np.int64)
    j = 0
    for lo in range(n + 1):
        while j < k and vals[j] <= lo:
            j += 1
        first[lo] = j
    stop = np.empty(k, np.int64)
    for r in range(R):
        s = sign[c, r]
        if s == 0:
            for j in range(k):
                stop[j] = j
        elif dot[c, r]:
            for j in range(k):
                stop[j] = j + 1
        elif k > 0:
            stop[k - 1] = k
            for j in range(k - 2, -1, -1):
                if s > 0:
                    ok = poss[j + 1] > poss[j]
                else:
                    ok = poss[j + 1] < poss[j]
                stop[j] = stop[j + 1] if ok else j + 1
        for lo in range(n + 1):
            j = first[lo]
            if j == k or stop[j] == k:
                out[r, lo] = n
            else:
                out[r, lo] = vals[stop[j]] - 1


@njit(cache=True)
def griddable_kernel(v, sign, dot):
    n = v.shape[0]
    C = sign.shape[0]
    R = sign.shape[1]
    pos = np.empty(n + 1, np.int64)
    for i in range(n):
        pos[v[i]] = i
    tab = np.empty((C, n + 1, n + 1, R, n + 1), np.int64)
    done = np.zeros((C, n + 1, n + 1), np.bool_)
    acc = np.empty((C + 1, R, n + 1), np.int64)
    acc[0, :, :] = n
    cuts = np.zeros(C + 1, np.int64)
    nxt = np.zeros(C + 1, np.int64)
    c = 0
    while c >= 0:
        start = cuts[c]
        if c == C - 1:
            end = n if nxt[c] <= n else n + 1
        else:
            end = nxt[c]
        if end > n:
            c -= 1
            continue
        nxt[c] = end + 1
        if end > start:
            if not done[c, start, end]:
                _fill_table(v, pos, sign, dot, c, start, end, tab[c, start, end])
                done[c, start, end] = True
            t = tab[c, start, end]
            reach = 0
            for r in range(R):
                best = 0
                for lo in range(n + 1):
                    a = acc[c, r, lo]
                    b = t[r, lo]
                    m = a if a < b else b
                    acc[c + 1, r, lo] = m
                    if lo <= reach and m > best:
                        best = m
                reach = best
            if reach != n:
                continue
        else:
            acc[c + 1] = acc[c]
        if c == C - 1:
            return True
        cuts[c + 1] = end
        nxt[c + 1] = end
        c += 1
    return False
