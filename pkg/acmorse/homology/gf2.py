"""Dense linear algebra over Z2 on uint8 arrays with XOR row operations."""

from __future__ import annotations

import numpy as np
from numpy.typing import ArrayLike, NDArray

BinaryMatrix = NDArray[np.uint8]


def as_binary(matrix: ArrayLike) -> BinaryMatrix:
    """Reduce an integer matrix modulo 2."""
    return np.asarray(np.asarray(matrix, dtype=np.int64) % 2, dtype=np.uint8)


def row_echelon(matrix: ArrayLike) -> tuple[BinaryMatrix, list[int]]:
    """Row echelon form over Z2 and the pivot column of each nonzero row."""
    reduced = as_binary(matrix).copy()
    if reduced.ndim != 2:
        raise ValueError(f"expected a 2-d matrix, got shape {reduced.shape}")
    rows, cols = reduced.shape
    pivots: list[int] = []
    pivot_row = 0
    for col in range(cols):
        if pivot_row == rows:
            break
        candidates = np.flatnonzero(reduced[pivot_row:, col])
        if candidates.size == 0:
            continue
        found = pivot_row + int(candidates[0])
        if found != pivot_row:
            reduced[[pivot_row, found]] = reduced[[found, pivot_row]]
        below = pivot_row + 1 + np.flatnonzero(reduced[pivot_row + 1 :, col])
        reduced[below] ^= reduced[pivot_row]
        pivots.append(col)
        pivot_row += 1
    return reduced, pivots


def rank(matrix: ArrayLike) -> int:
    binary = as_binary(matrix)
    if binary.size == 0:
        return 0
    return len(row_echelon(binary)[1])


def multiply(left: ArrayLike, right: ArrayLike) -> BinaryMatrix:
    """Matrix product over Z2."""
    product = np.asarray(left, dtype=np.int64) @ np.asarray(right, dtype=np.int64)
    return as_binary(product)
