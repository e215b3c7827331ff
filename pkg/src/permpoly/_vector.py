"""numpy helpers for scanning coefficient tuples in bulk."""

from __future__ import annotations

import itertools

import numpy as np

# rows * m entries per block stays near this many int64 values
BLOCK_ENTRIES = 1 << 22


def coefficient_blocks(m: int, ncols: int, max_rows: int | None = None):
    """Yield arrays of shape (rows, ncols) covering [0, m)^ncols.

    Tuples come in lexicographic order with column 0 most significant.
    """
    if ncols == 0:
        yield np.zeros((1, 0), dtype=np.int64)
        return
    if max_rows is None:
        max_rows = max(1, BLOCK_ENTRIES // max(m, 1))
    inner = 0
    while inner < ncols and m ** (inner + 1) <= max_rows:
        inner += 1
    inner = max(inner, 1)
    outer = ncols - inner
    grids = np.indices((m,) * inner, dtype=np.int64).reshape(inner, -1).T
    for head in itertools.product(range(m), repeat=outer):
        block = np.empty((grids.shape[0], ncols), dtype=np.int64)
        block[:, :outer] = head
        block[:, outer:] = grids
        yield block


def power_matrix(exponents, m: int, points=None) -> np.ndarray:
    """Entry [i, x] is x**exponents[i] mod m."""
    xs = list(range(m) if points is None else points)
    out = np.zeros((len(exponents), len(xs)), dtype=np.int64)
    for i, k in enumerate(exponents):
        out[i] = [pow(x, k, m) for x in xs]
    return out


def tables(block: np.ndarray, powers: np.ndarray, m: int) -> np.ndarray:
    if block.shape[1] == 0:
        return np.zeros((block.shape[0], powers.shape[1]), dtype=np.int64)
    return (block @ powers) % m


def bijective_rows(t: np.ndarray, m: int) -> np.ndarray:
    """Boolean mask of rows that hit every residue in [0, m)."""
    if m <= 64:
        bits = np.left_shift(np.uint64(1), t.astype(np.uint64))
        masks = np.bitwise_or.reduce(bits, axis=1)
        full = np.uint64((1 << m) - 1)
        return masks == full
    return (np.sort(t, axis=1) == np.arange(m)).all(axis=1)
