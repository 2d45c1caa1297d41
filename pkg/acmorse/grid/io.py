"""CSV persistence of node fields.

One row per node in lexicographic node order: the node multi-index columns
``i0 .. i{d-1}`` followed by the value column(s). Tensor fields store the
upper triangle ``g00, g01, ..., g{d-1}{d-1}`` row-major.
"""

from __future__ import annotations

import csv
from pathlib import Path

import numpy as np

from acmorse.exceptions import ConfigurationError, GridMismatchError

from .models import FloatArray, ScalarField, TorusGrid


def _index_columns(grid: TorusGrid) -> list[str]:
    return [f"i{axis}" for axis in range(grid.dim)]


def _upper_triangle(dim: int) -> list[tuple[int, int]]:
    return [(i, j) for i in range(dim) for j in range(i, dim)]


def field_rows(grid: TorusGrid, columns: FloatArray) -> list[list[str]]:
    """Rows of (multi-index, values...) with round-trip float formatting."""
    columns = np.asarray(columns).reshape(grid.node_count, -1)
    return [
        [str(i) for i in index] + [repr(float(v)) for v in values]
        for index, values in zip(grid.multi_indices(), columns)
    ]


def write_scalar_field(path: Path | str, field: ScalarField, name: str = "value") -> None:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("w", newline="") as handle:
        writer = csv.writer(handle, lineterminator="\n")
        writer.writerow([*_index_columns(field.grid), name])
        writer.writerows(field_rows(field.grid, field.values))


def _read_columns(path: Path | str, grid: TorusGrid, width: int) -> FloatArray:
    path = Path(path)
    if not path.exists():
        raise ConfigurationError(f"field file not found: {path}", key=str(path))
    with path.open(newline="") as handle:
        rows = [row for row in csv.reader(handle) if row]
    if not rows:
        raise ConfigurationError("field file is empty", key=str(path))
    header, body = rows[0], rows[1:]
    if len(header) != grid.dim + width:
        raise GridMismatchError(
            f"{path}: expected {grid.dim + width} columns, found {len(header)}"
        )
    if len(body) != grid.node_count:
        raise GridMismatchError(
            f"{path}: expected {grid.node_count} rows, found {len(body)}"
        )
    values = np.empty((grid.node_count, width))
    for line, row in enumerate(body, start=2):
        try:
            index = tuple(int(v) for v in row[: grid.dim])
            flat = int(np.ravel_multi_index(index, grid.sizes))
            values[flat] = [float(v) for v in row[grid.dim :]]
        except (ValueError, IndexError) as e:
            raise ConfigurationError(f"line {line}: {e}", key=str(path)) from e
    return values


def read_scalar_field(path: Path | str, grid: TorusGrid) -> ScalarField:
    return ScalarField(grid, _read_columns(path, grid, 1)[:, 0])


def read_tensor_field(path: Path | str, grid: TorusGrid) -> FloatArray:
    """Per-node symmetric tensors of shape (n, d, d) from upper-triangle rows."""
    pairs = _upper_triangle(grid.dim)
    columns = _read_columns(path, grid, len(pairs))
    tensor = np.zeros((grid.node_count, grid.dim, grid.dim))
    for column, (i, j) in enumerate(pairs):
        tensor[:, i, j] = columns[:, column]
        tensor[:, j, i] = columns[:, column]
    return tensor


def write_tensor_field(path: Path | str, grid: TorusGrid, tensor: FloatArray) -> None:
    pairs = _upper_triangle(grid.dim)
    tensor = np.asarray(tensor).reshape(grid.node_count, grid.dim, grid.dim)
    columns = np.stack([tensor[:, i, j] for i, j in pairs], axis=1)
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("w", newline="") as handle:
        writer = csv.writer(handle, lineterminator="\n")
        writer.writerow([*_index_columns(grid), *(f"g{i}{j}" for i, j in pairs)])
        writer.writerows(field_rows(grid, columns))
