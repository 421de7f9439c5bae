# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels: GF(2) elimination on packed rows, differential uniformity, linearity."""

import numpy as np
cimport numpy as cnp
from libc.stdint cimport uint64_t, int64_t
from libc.stdlib cimport malloc, free, calloc

cnp.import_array()

BACKEND = "cython"


cdef extern from *:
    int __builtin_popcountll(unsigned long long) nogil


cdef Py_ssize_t _eliminate(uint64_t[:, ::1] m, int ncols, int* pivots) noexcept nogil:
    cdef Py_ssize_t nrows = m.shape[0], nw = m.shape[1]
    cdef Py_ssize_t rank = 0, i, p, w
    cdef int c, word
    cdef uint64_t mask, tmp
    for c in range(ncols):
        if rank == nrows:
            break
        word = c >> 6
        mask = (<uint64_t>1) << (c & 63)
        p = -1
        for i in range(rank, nrows):
            if m[i, word] & mask:
                p = i
                break
        if p < 0:
            continue
        if p != rank:
            for w in range(nw):
                tmp = m[p, w]
                m[p, w] = m[rank, w]
                m[rank, w] = tmp
        for i in range(nrows):
            if i != rank and (m[i, word] & mask):
                for w in range(nw):
                    m[i, w] ^= m[rank, w]
        pivots[rank] = c
        rank += 1
    return rank


def solve_affine(rows, int ncols):
    """Solve the GF(2) system whose augmented rows carry the right-hand side at bit ``ncols``.

    Returns ``(consistent, solution, rank)``; free variables are set to zero.
    """
    cdef uint64_t[:, ::1] m = np.array(rows, dtype=np.uint64, order="C", copy=True)
    cdef Py_ssize_t nrows = m.shape[0], i
    cdef int* pivots = <int*>malloc((ncols + 1) * sizeof(int))
    cdef Py_ssize_t rank
    cdef int rw = ncols >> 6
    cdef uint64_t rmask = (<uint64_t>1) << (ncols & 63)
    try:
        with nogil:
            rank = _eliminate(m, ncols, pivots)
        for i in range(rank, nrows):
            if m[i, rw] & rmask:
                return False, None, rank
        sol = 0
        for i in range(rank):
            if m[i, rw] & rmask:
                sol |= 1 << <object>pivots[i]  # Python int: ncols may exceed 64
        return True, sol, rank
    finally:
        free(pivots)


def rank(rows, int ncols):
    cdef uint64_t[:, ::1] m = np.array(rows, dtype=np.uint64, order="C", copy=True)
    cdef int* pivots = <int*>malloc((ncols + 1) * sizeof(int))
    cdef Py_ssize_t r
    try:
        with nogil:
            r = _eliminate(m, ncols, pivots)
        return r
    finally:
        free(pivots)


def differential_uniformity(table, int n_in, int n_out):
    cdef const int64_t[::1] t = np.ascontiguousarray(table, dtype=np.int64)
    cdef Py_ssize_t size = (<Py_ssize_t>1) << n_in, osize = (<Py_ssize_t>1) << n_out
    cdef Py_ssize_t a, x, b
    cdef int best = 0
    cdef int* counts = <int*>calloc(osize, sizeof(int))
    if counts == NULL:
        raise MemoryError()
    try:
        with nogil:
            for a in range(1, size):
                for b in range(osize):
                    counts[b] = 0
                for x in range(size):
                    counts[t[x] ^ t[x ^ a]] += 1
                for b in range(osize):
                    if counts[b] > best:
                        best = counts[b]
        return best
    finally:
        free(counts)


cdef void _fwht(int64_t* a, Py_ssize_t size) noexcept nogil:
    cdef Py_ssize_t h = 1, i, j
    cdef int64_t x, y
    while h < size:
        i = 0
        while i < size:
            for j in range(i, i + h):
                x = a[j]
                y = a[j + h]
                a[j] = x + y
                a[j + h] = x - y
            i += 2 * h
        h *= 2


def walsh_transform(values):
    """Unnormalised Walsh-Hadamard transform along the last axis."""
    arr = np.array(values, dtype=np.int64, order="C", copy=True)
    cdef int64_t[:, ::1] m = arr.reshape(-1, arr.shape[arr.ndim - 1])
    cdef Py_ssize_t r
    for r in range(m.shape[0]):
        _fwht(&m[r, 0], m.shape[1])
    return arr


def linearity(table, int n_in, int n_out):
    """max over nonzero output masks w and all input masks u of |sum_x (-1)^(w.F(x) + u.x)|."""
    cdef const int64_t[::1] t = np.ascontiguousarray(table, dtype=np.int64)
    cdef Py_ssize_t size = (<Py_ssize_t>1) << n_in, osize = (<Py_ssize_t>1) << n_out
    cdef Py_ssize_t w, x
    cdef int64_t best = 0, v
    cdef int64_t* buf = <int64_t*>malloc(size * sizeof(int64_t))
    if buf == NULL:
        raise MemoryError()
    try:
        with nogil:
            for w in range(1, osize):
                for x in range(size):
                    buf[x] = 1 - 2 * (__builtin_popcountll(<unsigned long long>(t[x] & w)) & 1)
                _fwht(buf, size)
                for x in range(size):
                    v = buf[x] if buf[x] >= 0 else -buf[x]
                    if v > best:
                        best = v
        return best
    finally:
        free(buf)
