# cython: boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled row reduction over GF(p).

Entries are int64 in [0, p) with p < 2**31, so every product fits in 63 bits.
"""
import numpy as np

from libc.stdint cimport int64_t


cdef inline int64_t _inverse(int64_t a, int64_t p) noexcept nogil:
    cdef int64_t t = 0, new_t = 1, r = p, new_r = a, q, tmp
    while new_r != 0:
        q = r // new_r
        tmp = t - q * new_t
        t = new_t
        new_t = tmp
        tmp = r - q * new_r
        r = new_r
        new_r = tmp
    if t < 0:
        t += p
    return t


def rref_inplace(int64_t[:, ::1] a, int64_t p):
    """Reduce ``a`` to reduced row echelon form in place; return pivot columns."""
    cdef Py_ssize_t nrows = a.shape[0]
    cdef Py_ssize_t ncols = a.shape[1]
    cdef Py_ssize_t row = 0, col, i, j, piv
    cdef int64_t inv, f, v, tmp
    cdef Py_ssize_t npiv = 0
    cdef Py_ssize_t[::1] pivots = np.empty(min(nrows, ncols) + 1, dtype=np.intp)

    with nogil:
        for col in range(ncols):
            if row >= nrows:
                break
            piv = -1
            for i in range(row, nrows):
                if a[i, col] != 0:
                    piv = i
                    break
            if piv < 0:
                continue
            if piv != row:
                for j in range(col, ncols):
                    tmp = a[row, j]
                    a[row, j] = a[piv, j]
                    a[piv, j] = tmp
            inv = _inverse(a[row, col], p)
            if inv != 1:
                for j in range(col, ncols):
                    a[row, j] = (a[row, j] * inv) % p
            for i in range(nrows):
                if i == row:
                    continue
                f = a[i, col]
                if f == 0:
                    continue
                f = p - f
                for j in range(col, ncols):
                    v = a[row, j]
                    if v != 0:
                        a[i, j] = (a[i, j] + f * v) % p
            pivots[npiv] = col
            npiv += 1
            row += 1
    return [int(pivots[k]) for k in range(npiv)]
