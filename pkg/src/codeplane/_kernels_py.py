"""Python-lane distance kernels (numpy-backed), twin of the compiled module.

Words are packed one symbol per byte; a word set is the concatenation of m
length-n words into a single read-only buffer. All functions are pure and
must return bit-identical results to ``_distkern``.
"""

from __future__ import annotations

import numpy as np

# below this many words, plain-bytes loops beat numpy dispatch overhead
_SMALL = 8


def _as_matrix(buf, m, n):
    return np.frombuffer(buf, dtype=np.uint8, count=m * n).reshape(m, n)


def hamming(a, b):
    if len(a) != len(b):
        raise ValueError("hamming distance requires equal-length words")
    if len(a) <= 64:
        return sum(x != y for x, y in zip(a, b))
    arr_a = np.frombuffer(a, dtype=np.uint8)
    arr_b = np.frombuffer(b, dtype=np.uint8)
    return int((arr_a != arr_b).sum())


def min_pairwise(buf, m, n):
    """Minimum pairwise distance over m words; returns (d, i, j).

    (i, j) is the first attaining pair in row-major scan order (i < j),
    matching the compiled kernel exactly.
    """
    if m < 2:
        raise ValueError("need at least two words")
    if m <= _SMALL:
        best, bi, bj = n + 1, -1, -1
        words = [buf[k * n:(k + 1) * n] for k in range(m)]
        for i in range(m - 1):
            wi = words[i]
            for j in range(i + 1, m):
                d = sum(x != y for x, y in zip(wi, words[j]))
                if d < best:
                    best, bi, bj = d, i, j
        return best, bi, bj
    arr = _as_matrix(buf, m, n)
    best, bi, bj = n + 1, -1, -1
    for i in range(m - 1):
        dists = (arr[i + 1:] != arr[i]).sum(axis=1)
        j_rel = int(dists.argmin())
        d = int(dists[j_rel])
        if d < best:
            best, bi, bj = d, i, i + 1 + j_rel
    return best, bi, bj


def min_to_set(buf, m, n, cand):
    """Minimum distance from ``cand`` to any of the m packed words."""
    if m <= _SMALL:
        best = n + 1
        for k in range(m):
            d = sum(x != y for x, y in zip(buf[k * n:(k + 1) * n], cand))
            if d < best:
                best = d
        return best
    arr = _as_matrix(buf, m, n)
    cand_arr = np.frombuffer(cand, dtype=np.uint8)
    return int((arr != cand_arr).sum(axis=1).min())


def all_at_least(buf, m, n, cand, d):
    """True iff cand is at distance >= d from every packed word."""
    if d <= 0:
        return True
    if m <= _SMALL:
        for k in range(m):
            if sum(x != y for x, y in zip(buf[k * n:(k + 1) * n], cand)) < d:
                return False
        return True
    arr = _as_matrix(buf, m, n)
    cand_arr = np.frombuffer(cand, dtype=np.uint8)
    return bool(((arr != cand_arr).sum(axis=1) >= d).all())
