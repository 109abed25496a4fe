"""Row-reduction kernels mod p, with a numba backend and a pure-numpy fallback.

The backend is chosen once at import time from the environment variable
``KOSZULKIT_BACKEND``:

* ``numba`` (default when numba imports): hot loops are ``@njit``-compiled.
* ``numpy``: vectorized pure-numpy path, no compilation step.

Both backends use the same pivot rule (first nonzero entry in the current
column, scanning down), so reduced forms, ranks and kernel bases are
bit-identical between them.  Matrices are ``int64`` with entries in
``[0, p)``; intermediate products must stay below 2**63, which holds for
p < 2**31.
"""

from __future__ import annotations

import os

import numpy as np

_requested = os.environ.get("KOSZULKIT_BACKEND", "").strip().lower()

if _requested not in ("", "numba", "numpy"):
    raise RuntimeError(f"KOSZULKIT_BACKEND must be 'numba' or 'numpy', got {_requested!r}")

_use_numba = _requested != "numpy"
if _use_numba:
    try:
        from numba import njit
    except ImportError:
        if _requested == "numba":
            raise
        _use_numba = False


def _py_rref(a, p):
    """In-place reduced row echelon form of ``a`` mod p.

    Returns (rank, pivots) where pivots[r] is the pivot column of row r.
    """
    m, n = a.shape
    pivots = np.full(min(m, n), -1, dtype=np.int64)
    rank = 0
    for col in range(n):
        if rank == m:
            break
        sel = -1
        for r in range(rank, m):
            if a[r, col] != 0:
                sel = r
                break
        if sel < 0:
            continue
        if sel != rank:
            for j in range(col, n):
                t = a[rank, j]
                a[rank, j] = a[sel, j]
                a[sel, j] = t
        # scale pivot row by the inverse of the pivot (Fermat)
        inv = 1
        base = a[rank, col] % p
        e = p - 2
        while e:
            if e & 1:
                inv = inv * base % p
            base = base * base % p
            e >>= 1
        for j in range(col, n):
            a[rank, j] = a[rank, j] * inv % p
        for r in range(m):
            if r != rank and a[r, col] != 0:
                f = a[r, col]
                for j in range(col, n):
                    a[r, j] = (a[r, j] - f * a[rank, j]) % p
        pivots[rank] = col
        rank += 1
    return rank, pivots


def _np_rref(a, p):
    """Vectorized rref mod p; same contract and pivot rule as _py_rref."""
    m, n = a.shape
    pivots = np.full(min(m, n), -1, dtype=np.int64)
    rank = 0
    for col in range(n):
        if rank == m:
            break
        nz = np.nonzero(a[rank:, col])[0]
        if nz.size == 0:
            continue
        sel = rank + int(nz[0])
        if sel != rank:
            a[[rank, sel]] = a[[sel, rank]]
        a[rank] = a[rank] * pow(int(a[rank, col]), p - 2, p) % p
        rows = np.nonzero(a[:, col])[0]
        rows = rows[rows != rank]
        if rows.size:
            a[rows] = (a[rows] - np.outer(a[rows, col], a[rank])) % p
        pivots[rank] = col
        rank += 1
    return rank, pivots


if _use_numba:
    _rref_kernel = njit(cache=True)(_py_rref)
    BACKEND = "numba"
else:
    _rref_kernel = _np_rref
    BACKEND = "numpy"


def rref_inplace(a: np.ndarray, p: int):
    """Reduce ``a`` (int64, C-contiguous) in place; return (rank, pivot columns)."""
    rank, pivots = _rref_kernel(a, p)
    return int(rank), pivots[:rank]


def rref_numpy_inplace(a: np.ndarray, p: int):
    """The numpy fallback, exposed directly for the backend benchmark."""
    rank, pivots = _np_rref(a, p)
    return int(rank), pivots[:rank]
