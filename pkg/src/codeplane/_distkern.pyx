# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled distance kernels; twin of ``_kernels_py``.

Same packed-buffer conventions and identical results, including witness
tie-breaking (first attaining pair in row-major scan order).
"""


def hamming(const unsigned char[::1] a, const unsigned char[::1] b):
    cdef Py_ssize_t i, n = a.shape[0]
    cdef Py_ssize_t d = 0
    if b.shape[0] != n:
        raise ValueError("hamming distance requires equal-length words")
    for i in range(n):
        if a[i] != b[i]:
            d += 1
    return d


def min_pairwise(const unsigned char[::1] buf, Py_ssize_t m, Py_ssize_t n):
    # branchless inner count so the compiler can vectorize the byte compares
    cdef Py_ssize_t i, j, k, d
    cdef Py_ssize_t best = n + 1
    cdef Py_ssize_t bi = -1, bj = -1
    cdef const unsigned char *wa
    cdef const unsigned char *wb
    if m < 2:
        raise ValueError("need at least two words")
    for i in range(m - 1):
        wa = &buf[i * n]
        for j in range(i + 1, m):
            wb = &buf[j * n]
            d = 0
            for k in range(n):
                d += wa[k] != wb[k]
            if d < best:
                best = d
                bi = i
                bj = j
    return best, bi, bj


def min_to_set(const unsigned char[::1] buf, Py_ssize_t m, Py_ssize_t n,
               const unsigned char[::1] cand):
    cdef Py_ssize_t k, t, d
    cdef Py_ssize_t best = n + 1
    for k in range(m):
        d = 0
        for t in range(n):
            if buf[k * n + t] != cand[t]:
                d += 1
                if d >= best:
                    break
        if d < best:
            best = d
    return best


def all_at_least(const unsigned char[::1] buf, Py_ssize_t m, Py_ssize_t n,
                 const unsigned char[::1] cand, Py_ssize_t d):
    cdef Py_ssize_t k, t, cnt
    if d <= 0:
        return True
    for k in range(m):
        cnt = 0
        for t in range(n):
            if buf[k * n + t] != cand[t]:
                cnt += 1
                if cnt >= d:
                    break
        if cnt < d:
            return False
    return True
