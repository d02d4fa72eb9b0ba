"""Exact linear algebra mod a small prime, on top of numpy integer arrays.

Row vectors are 1-d arrays with entries in [0, p).  Pivot selection is
always "first nonzero", so every routine is deterministic.
"""

from __future__ import annotations

import numpy as np


def _as_matrix(rows, p):
    arr = np.array(rows, dtype=np.int64) % p
    if arr.ndim == 1:
        arr = arr.reshape(1, -1)
    return arr


def rref_mod(rows, p: int):
    """Reduced row echelon form mod p. Returns (matrix, pivot_columns)."""
    arr = _as_matrix(rows, p)
    nrows, ncols = arr.shape
    pivots = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        nz = np.nonzero(arr[r:, c])[0]
        if nz.size == 0:
            continue
        i = r + int(nz[0])
        if i != r:
            arr[[r, i]] = arr[[i, r]]
        inv = pow(int(arr[r, c]), p - 2, p)
        arr[r] = (arr[r] * inv) % p
        other = np.nonzero(arr[:, c])[0]
        other = other[other != r]
        if other.size:
            arr[other] = (arr[other] - np.outer(arr[other, c], arr[r])) % p
        pivots.append(c)
        r += 1
    return arr[:r], pivots


def rank_mod(rows, p: int) -> int:
    return rref_mod(rows, p)[0].shape[0]


def nullspace_mod(matrix, p: int):
    """Basis of {v : M v = 0 (mod p)} for an (m x n) matrix M, as a list of
    length-n arrays. Free variables are taken in increasing column order."""
    arr = _as_matrix(matrix, p)
    ncols = arr.shape[1]
    red, pivots = rref_mod(arr, p)
    pivot_set = set(pivots)
    free = [c for c in range(ncols) if c not in pivot_set]
    basis = []
    for f in free:
        v = np.zeros(ncols, dtype=np.int64)
        v[f] = 1
        for r, c in enumerate(pivots):
            v[c] = (-red[r, f]) % p
        basis.append(v)
    return basis


class FpSpan:
    """Incrementally maintained row space mod p, kept in reduced echelon form."""

    def __init__(self, p: int, width: int):
        self.p = p
        self.width = width
        self.rows = []          # echelon rows, each with a recorded pivot column
        self.pivots = []

    def reduce(self, vec):
        v = np.array(vec, dtype=np.int64) % self.p
        for row, c in zip(self.rows, self.pivots):
            if v[c]:
                v = (v - v[c] * row) % self.p
        return v

    def contains(self, vec) -> bool:
        return not self.reduce(vec).any()

    def add(self, vec) -> bool:
        """Insert vec; True if it enlarged the span."""
        v = self.reduce(vec)
        nz = np.nonzero(v)[0]
        if nz.size == 0:
            return False
        c = int(nz[0])
        v = (v * pow(int(v[c]), self.p - 2, self.p)) % self.p
        for row in self.rows:
            if row[c]:
                row -= row[c] * v
                row %= self.p
        self.rows.append(v)
        self.pivots.append(c)
        return True

    @property
    def rank(self) -> int:
        return len(self.rows)
