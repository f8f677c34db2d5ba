# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled move-graph kernels; same contract as ``_kernels_py``."""

import numpy as np
cimport numpy as cnp

cnp.import_array()


cdef inline long long _find(long long[::1] parent, long long x) noexcept nogil:
    cdef long long root = x, nxt
    while parent[root] != root:
        root = parent[root]
    while parent[x] != root:
        nxt = parent[x]
        parent[x] = root
        x = nxt
    return root


cdef inline void _union(long long[::1] parent, long long a, long long b) noexcept nogil:
    cdef long long ra = _find(parent, a), rb = _find(parent, b)
    if ra == rb:
        return
    if ra < rb:
        parent[rb] = ra
    else:
        parent[ra] = rb


def component_labels(int s, int n):
    cdef long long base = 2 * s + 1
    cdef long long total = base ** n
    cdef cnp.ndarray[cnp.int64_t, ndim=1] parent_arr = np.arange(total, dtype=np.int64)
    cdef long long[::1] parent = parent_arr
    cdef long long[::1] weights = np.array([base ** (n - 1 - i) for i in range(n)], dtype=np.int64)
    cdef long long[::1] digits = np.zeros(max(n, 1), dtype=np.int64)
    cdef long long idx, rem, a, b, wa, wb
    cdef int i, m
    with nogil:
        for idx in range(total):
            rem = idx
            for i in range(n):
                digits[i] = rem // weights[i] - s
                rem = rem % weights[i]
            for i in range(n - 1):
                a = digits[i]
                b = digits[i + 1]
                wa = weights[i]
                wb = weights[i + 1]
                if a == 0 and b != 0:
                    _union(parent, idx, idx + b * wa - b * wb)
                elif b == 0 and a != 0:
                    _union(parent, idx, idx - a * wa + a * wb)
                elif a == 0 and b == 0:
                    for m in range(1, s + 1):
                        _union(parent, idx, idx + m * wa - m * wb)
        for idx in range(total):
            parent[idx] = _find(parent, idx)
    return parent_arr


def canonical_indices(int s, int n):
    cdef long long base = 2 * s + 1
    cdef long long total = base ** n
    cdef cnp.ndarray[cnp.int64_t, ndim=1] out_arr = np.empty(total, dtype=np.int64)
    cdef long long[::1] out = out_arr
    cdef long long[::1] weights = np.array([base ** (n - 1 - i) for i in range(n)], dtype=np.int64)
    cdef long long[::1] stack = np.zeros(max(n, 1), dtype=np.int64)
    cdef long long idx, rem, v, code
    cdef int i, top
    with nogil:
        for idx in range(total):
            rem = idx
            top = 0
            for i in range(n):
                v = rem // weights[i] - s
                rem = rem % weights[i]
                if v == 0:
                    continue
                if top > 0 and stack[top - 1] > 0 and stack[top - 1] == -v:
                    top -= 1
                else:
                    stack[top] = v
                    top += 1
            code = 0
            for i in range(n):
                code = code * base + (stack[i] if i < top else 0) + s
            out[idx] = code
    return out_arr
