"""Numpy row reduction over GF(p); used when the compiled kernel is unavailable."""

import numpy as np


def rref_inplace(a, p):
    """Reduce ``a`` to reduced row echelon form in place; return pivot columns."""
    nrows, ncols = a.shape
    pivots = []
    row = 0
    for col in range(ncols):
        if row >= nrows:
            break
        nz = np.flatnonzero(a[row:, col])
        if nz.size == 0:
            continue
        piv = row + int(nz[0])
        if piv != row:
            a[[row, piv], col:] = a[[piv, row], col:]
        inv = pow(int(a[row, col]), p - 2, p)
        if inv != 1:
            a[row, col:] = a[row, col:] * inv % p
        factors = a[:, col].copy()
        factors[row] = 0
        rows = np.flatnonzero(factors)
        if rows.size:
            a[rows, col:] = (a[rows, col:] - np.outer(factors[rows], a[row, col:])) % p
        pivots.append(col)
        row += 1
    return pivots
