# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled implementations of the hot kernels (popcount scans, FNV-1a)."""

import numpy as np

BACKEND = "cython"

cdef extern from *:
    """
    #if defined(__GNUC__) || defined(__clang__)
    #define dsx_popcount64(x) __builtin_popcountll(x)
    #else
    static inline int dsx_popcount64(unsigned long long x) {
        int n = 0;
        while (x) { x &= x - 1; n++; }
        return n;
    }
    #endif
    """
    int dsx_popcount64(unsigned long long x) nogil


def fnv1a64(const unsigned char[::1] data) -> int:
    """FNV-1a 64-bit hash of a byte string."""
    cdef unsigned long long h = 0xCBF29CE484222325ULL
    cdef Py_ssize_t i
    for i in range(data.shape[0]):
        h ^= data[i]
        h *= 0x100000001B3ULL
    return h


def and_popcount(const unsigned long long[:, ::1] rows,
                 const unsigned long long[::1] query):
    """Per-row popcount of rows & query for a (n, w) uint64 matrix."""
    cdef Py_ssize_t n = rows.shape[0]
    cdef Py_ssize_t w = rows.shape[1]
    out = np.empty(n, dtype=np.int64)
    cdef long long[::1] out_view = out
    cdef Py_ssize_t i, j
    cdef long long acc
    with nogil:
        for i in range(n):
            acc = 0
            for j in range(w):
                acc += dsx_popcount64(rows[i, j] & query[j])
            out_view[i] = acc
    return out


def row_popcount(const unsigned long long[:, ::1] rows):
    """Per-row popcount of a (n, w) uint64 matrix."""
    cdef Py_ssize_t n = rows.shape[0]
    cdef Py_ssize_t w = rows.shape[1]
    out = np.empty(n, dtype=np.int64)
    cdef long long[::1] out_view = out
    cdef Py_ssize_t i, j
    cdef long long acc
    with nogil:
        for i in range(n):
            acc = 0
            for j in range(w):
                acc += dsx_popcount64(rows[i, j])
            out_view[i] = acc
    return out
