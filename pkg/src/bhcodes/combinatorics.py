"""Revolving-door combination order.

Consecutive t-subsets differ by exactly one element leaving and one
entering, so a running XOR of generator rows costs two row XORs per step.
"""

from __future__ import annotations

from typing import Iterator


def revolving_door(n: int, t: int) -> Iterator[tuple[int, ...]]:
    """All t-subsets of range(n), each as a sorted tuple, in revolving-door order."""
    if t < 0 or t > n:
        return
    if t == 0:
        yield ()
        return
    if t == n:
        yield tuple(range(n))
        return
    if t == 1:
        for i in range(n):
            yield (i,)
        return
    # 1-indexed, c[t+1] = n and c[t+2] is a sentinel past every value
    c = [0] + list(range(t)) + [n, n + 1]
    while True:
        yield tuple(c[1:t + 1])
        if t & 1:
            if c[1] + 1 < c[2]:
                c[1] += 1
                continue
            j = 2
            step = 4
        else:
            if c[1] > 0:
                c[1] -= 1
                continue
            j = 2
            step = 5
        while True:
            if step == 4:
                if c[j] >= j:
                    c[j] = c[j - 1]
                    c[j - 1] = j - 2
                    break
                j += 1
                step = 5
            if j > t:
                return
            if c[j] + 1 < c[j + 1]:
                c[j - 1] = c[j]
                c[j] += 1
                break
            j += 1
            if j > t:
                return
            step = 4


def binomial_sum(n: int, t: int) -> int:
    """Number of subsets of size <= t of an n-set."""
    from math import comb
    return sum(comb(n, r) for r in range(min(t, n) + 1))
