"""Exact linear algebra over the prime field GF(p).

Matrices are ``numpy.int64`` arrays with entries in ``[0, p)``.  The hot
kernel (row reduction) comes from the compiled ``_gfp`` extension when it is
importable, otherwise from a numpy implementation with the same contract.
Set ``TILTCOUNT_PURE_PYTHON=1`` to force the fallback at import time, or call
:func:`set_backend` at runtime.
"""

from __future__ import annotations

import os

import numpy as np

from . import _gfp_py

try:
    if os.environ.get("TILTCOUNT_PURE_PYTHON"):
        raise ImportError("pure-Python backend requested")
    from . import _gfp as _compiled
except ImportError:
    _compiled = None

MAX_PRIME = 2**31 - 1
# above this, int64 matmul could overflow for long inner dimensions
_SAFE_MATMUL_PRIME = 2**26

_KERNELS = {"python": _gfp_py.rref_inplace}
if _compiled is not None:
    _KERNELS["cython"] = _compiled.rref_inplace

BACKEND = "cython" if _compiled is not None else "python"
_rref_inplace = _KERNELS[BACKEND]


def available_backends():
    return sorted(_KERNELS)


def set_backend(name):
    """Switch the row-reduction kernel ("cython" or "python")."""
    global BACKEND, _rref_inplace
    if name not in _KERNELS:
        raise ValueError(f"backend {name!r} unavailable; have {available_backends()}")
    BACKEND = name
    _rref_inplace = _KERNELS[name]


def is_prime(n):
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def asmat(a, p, shape=None):
    m = np.asarray(a, dtype=np.int64)
    if shape is not None:
        m = m.reshape(shape)
    return np.mod(m, p)


def zeros(rows, cols):
    return np.zeros((rows, cols), dtype=np.int64)


def identity(n):
    return np.eye(n, dtype=np.int64)


def matmul(a, b, p):
    if a.shape[1] == 0 or a.shape[0] == 0 or b.shape[1] == 0:
        return np.zeros((a.shape[0], b.shape[1]), dtype=np.int64)
    if p > _SAFE_MATMUL_PRIME:
        out = (a.astype(object) @ b.astype(object)) % p
        return out.astype(np.int64)
    return (a @ b) % p


def rref(a, p):
    """Return ``(R, pivots)``: the nonzero rows of the RREF of ``a`` and pivot columns."""
    m = np.array(a, dtype=np.int64, order="C", copy=True)
    if m.ndim != 2:
        raise ValueError("rref expects a 2-d array")
    if m.size == 0:
        return m[:0], []
    np.mod(m, p, out=m)
    pivots = _rref_inplace(m, p)
    return m[: len(pivots)], list(pivots)


def rank(a, p):
    a = np.asarray(a)
    if a.size == 0:
        return 0
    return len(rref(a, p)[1])


def nullspace(a, p):
    """Rows form a basis of ``{x : a @ x = 0}``; each row is 1 on its own free column."""
    a = np.asarray(a, dtype=np.int64)
    ncols = a.shape[1]
    if a.shape[0] == 0 or ncols == 0:
        return np.eye(ncols, dtype=np.int64)
    r, pivots = rref(a, p)
    pivot_set = set(pivots)
    free = [c for c in range(ncols) if c not in pivot_set]
    basis = np.zeros((len(free), ncols), dtype=np.int64)
    for k, f in enumerate(free):
        basis[k, f] = 1
        if pivots:
            basis[k, pivots] = (-r[:, f]) % p
    return basis


def left_nullspace(a, p):
    """Rows ``y`` with ``y @ a = 0``."""
    return nullspace(np.asarray(a).T, p)


def independent_columns(a, p):
    a = np.asarray(a)
    if a.size == 0:
        return []
    return rref(a, p)[1]


def column_basis(a, p):
    cols = independent_columns(a, p)
    return np.asarray(a, dtype=np.int64)[:, cols] % p


def row_basis(a, p):
    a = np.asarray(a, dtype=np.int64)
    if a.size == 0:
        return np.zeros((0, a.shape[1]), dtype=np.int64)
    return rref(a, p)[0]


def inverse(a, p):
    n = a.shape[0]
    if a.shape != (n, n):
        raise ValueError("inverse of a non-square matrix")
    if n == 0:
        return a.copy()
    aug = np.hstack([np.asarray(a, dtype=np.int64) % p, np.eye(n, dtype=np.int64)])
    r, pivots = rref(aug, p)
    if pivots[:n] != list(range(n)) or len(pivots) < n or pivots[n - 1] >= n:
        raise ZeroDivisionError("matrix is singular mod p")
    return r[:, n:]


def left_inverse(b, p):
    """``L`` with ``L @ b = I`` for ``b`` of full column rank."""
    m, k = b.shape
    if k == 0:
        return np.zeros((0, m), dtype=np.int64)
    rows = independent_columns(b.T, p)
    if len(rows) != k:
        raise ValueError("left_inverse needs full column rank")
    out = np.zeros((k, m), dtype=np.int64)
    out[:, rows] = inverse(b[rows, :], p)
    return out


def complement_units(b, m, p):
    """Unit columns of F^m spanning a complement of the column space of ``b``."""
    if b.size == 0 or b.shape[1] == 0:
        taken = set()
    else:
        taken = set(independent_columns(b.T, p))
    cols = [c for c in range(m) if c not in taken]
    out = np.zeros((m, len(cols)), dtype=np.int64)
    out[cols, range(len(cols))] = 1
    return out


def in_span(rows, v, p):
    """Whether row vector ``v`` lies in the row span of ``rows``."""
    if rows.shape[0] == 0:
        return not np.any(np.asarray(v) % p)
    return rank(np.vstack([rows, v]), p) == rank(rows, p)


def matpow(a, k, p):
    result = np.eye(a.shape[0], dtype=np.int64)
    base = a % p
    while k:
        if k & 1:
            result = matmul(result, base, p)
        base = matmul(base, base, p)
        k >>= 1
    return result


def det(a, p):
    n = a.shape[0]
    if n == 0:
        return 1
    m = np.array(a, dtype=np.int64) % p
    sign = 1
    d = 1
    for col in range(n):
        nz = np.flatnonzero(m[col:, col])
        if nz.size == 0:
            return 0
        piv = col + int(nz[0])
        if piv != col:
            m[[col, piv]] = m[[piv, col]]
            sign = -sign
        pv = int(m[col, col])
        d = d * pv % p
        inv = pow(pv, p - 2, p)
        below = m[col + 1 :, col] * inv % p
        m[col + 1 :, col:] = (m[col + 1 :, col:] - np.outer(below, m[col, col:])) % p
    return d * sign % p


def charpoly(a, p):
    """Coefficients (highest degree first) of det(x I - a), by interpolation."""
    n = a.shape[0]
    if n >= p:
        raise ValueError("charpoly by interpolation needs n < p")
    xs = list(range(n + 1))
    ys = [det((x * np.eye(n, dtype=np.int64) - a) % p, p) for x in xs]
    # Lagrange interpolation in the monomial basis
    coeffs = [0] * (n + 1)  # lowest degree first
    for i, xi in enumerate(xs):
        num = [1]
        denom = 1
        for j, xj in enumerate(xs):
            if j == i:
                continue
            num = [(c1 - xj * c0) % p for c0, c1 in zip(num + [0], [0] + num)]
            denom = denom * (xi - xj) % p
        scale = ys[i] * pow(denom, p - 2, p) % p
        for k, c in enumerate(num):
            coeffs[k] = (coeffs[k] + scale * c) % p
    return coeffs[::-1]
