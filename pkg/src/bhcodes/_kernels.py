"""numba kernels for low-weight enumeration and pair-distance histograms.

A *task* ``(r, m)`` covers every message of weight r whose highest set bit is
m: the set {m} plus an (r-1)-subset of range(m), walked in revolving-door
order.  Tasks over all m partition the weight-r messages, which is the unit
of work handed to threads.
"""

from __future__ import annotations

import numpy as np
from numba import njit

MODE_HIST = 0
MODE_FIND = 1
MODE_COLLECT = 2

_M1 = np.uint64(0x5555555555555555)
_M2 = np.uint64(0x3333333333333333)
_M4 = np.uint64(0x0F0F0F0F0F0F0F0F)
_H01 = np.uint64(0x0101010101010101)
_ONE = np.uint64(1)


@njit(cache=True, nogil=True, inline="always")
def popcount(x):
    x = x - ((x >> _ONE) & _M1)
    x = (x & _M2) + ((x >> np.uint64(2)) & _M2)
    x = (x + (x >> np.uint64(4))) & _M4
    return np.int64((x * _H01) >> np.uint64(56))


@njit(cache=True, nogil=True, inline="always")
def _visit(mode, r, mask, acc, w_lo, w_hi, half, hist, out, count):
    pc = popcount(acc)
    if mode == MODE_HIST:
        hist[r, pc] += 1
        return count
    w = r + pc
    if mode == MODE_FIND:
        if w_lo <= w <= w_hi:
            out[0, 0] = mask
            out[0, 1] = acc
            return np.int64(-1)
        return count
    if w == w_lo and pc > half:
        if count < out.shape[0]:
            out[count, 0] = mask
            out[count, 1] = acc
        return count + 1
    return count


@njit(cache=True, nogil=True)
def scan_task(rows, r, m, mode, w_lo, w_hi, half, hist, out, count):
    """Visit all weight-r messages with top bit m.

    Returns the updated collect count, or -1 once FIND mode hits.
    """
    s = r - 1
    acc = rows[m]
    mask = _ONE << np.uint64(m)
    if s < 0 or s > m:
        return count
    if s == 0:
        return _visit(mode, r, mask, acc, w_lo, w_hi, half, hist, out, count)
    for i in range(s):
        acc ^= rows[i]
        mask |= _ONE << np.uint64(i)
    if s == m:
        return _visit(mode, r, mask, acc, w_lo, w_hi, half, hist, out, count)
    if s == 1:
        # single moving element over range(m)
        count = _visit(mode, r, mask, acc, w_lo, w_hi, half, hist, out, count)
        if count < 0:
            return count
        for i in range(1, m):
            acc ^= rows[i - 1] ^ rows[i]
            mask ^= (_ONE << np.uint64(i - 1)) | (_ONE << np.uint64(i))
            count = _visit(mode, r, mask, acc, w_lo, w_hi, half, hist, out, count)
            if count < 0:
                return count
        return count

    n = m
    t = s
    c = np.empty(t + 3, dtype=np.int64)
    c[0] = 0
    for j in range(1, t + 1):
        c[j] = j - 1
    c[t + 1] = n
    c[t + 2] = n + 1
    while True:
        count = _visit(mode, r, mask, acc, w_lo, w_hi, half, hist, out, count)
        if count < 0:
            return count
        gone = -1
        came = -1
        if t & 1:
            if c[1] + 1 < c[2]:
                gone = c[1]
                c[1] += 1
                came = c[1]
        else:
            if c[1] > 0:
                gone = c[1]
                c[1] -= 1
                came = c[1]
        if gone < 0:
            j = 2
            step = 4 if t & 1 else 5
            finished = False
            while True:
                if step == 4:
                    if c[j] >= j:
                        gone = c[j]
                        came = j - 2
                        c[j] = c[j - 1]
                        c[j - 1] = j - 2
                        break
                    j += 1
                    step = 5
                if j > t:
                    finished = True
                    break
                if c[j] + 1 < c[j + 1]:
                    gone = c[j - 1]
                    came = c[j] + 1
                    c[j - 1] = c[j]
                    c[j] += 1
                    break
                j += 1
                if j > t:
                    finished = True
                    break
                step = 4
            if finished:
                return count
        acc ^= rows[gone] ^ rows[came]
        mask ^= (_ONE << np.uint64(gone)) | (_ONE << np.uint64(came))


@njit(cache=True, nogil=True)
def scan_tasks(rows, tasks, mode, w_lo, w_hi, half, hist, out):
    """Run a list of (r, m) tasks; returns collect count or -1 on FIND hit."""
    count = np.int64(0)
    for i in range(tasks.shape[0]):
        count = scan_task(rows, tasks[i, 0], tasks[i, 1], mode, w_lo, w_hi, half,
                          hist, out, count)
        if count < 0:
            return count
    return count


@njit(cache=True, nogil=True)
def pair_distance_histogram(lo, hi, start, stop, hist):
    """Add d(w_i, w_j) for start <= i < stop, i < j to hist."""
    n = lo.shape[0]
    for i in range(start, stop):
        a = lo[i]
        b = hi[i]
        for j in range(i + 1, n):
            hist[popcount(a ^ lo[j]) + popcount(b ^ hi[j])] += 1


@njit(cache=True, nogil=True)
def count_covering(lo, hi, mlo, mhi):
    total = 0
    for i in range(lo.shape[0]):
        if (lo[i] & mlo) == mlo and (hi[i] & mhi) == mhi:
            total += 1
    return total
