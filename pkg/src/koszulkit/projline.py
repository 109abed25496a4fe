"""Cech cohomology of line bundles on the projective line, two charts.

Sections of O(d) are degree-d Laurent monomials s^a t^b (a + b = d);
chart 0 allows b >= 0, chart 1 allows a >= 0, the overlap allows any a.
The complex is truncated at |exponent| <= |d| + 2, which is exact: deeper
monomials are matched bijectively by the difference map.  Dimensions are
checked in the tests against the closed form h0 = max(d+1, 0),
h1 = max(-d-1, 0).
"""

from __future__ import annotations

import numpy as np

from .linalg import check_modulus, rank


def cohomology_P1(d: int, p: int = 3) -> tuple[int, int]:
    """(h0, h1) of O(d) on the projective line over GF(p), by Cech ranks."""
    check_modulus(p)
    m = abs(d) + 2
    # chart bases: (chart 0) a = d - k, k = 0..m ; (chart 1) a = k, k = 0..m
    c0 = [d - k for k in range(m + 1)]
    c1 = [k for k in range(m + 1)]
    overlap = list(range(min(c0 + c1), max(c0 + c1) + 1))
    col = {a: i for i, a in enumerate(overlap)}
    mat = np.zeros((len(c0) + len(c1), len(overlap)), dtype=np.int64)
    for r, a in enumerate(c0):
        mat[r, col[a]] = p - 1  # -f0
    for r, a in enumerate(c1):
        mat[len(c0) + r, col[a]] = 1  # +f1
    rk = rank(mat, p)
    h0 = len(c0) + len(c1) - rk
    h1 = len(overlap) - rk
    return h0, h1
