"""Discrete geometry types: torus grids, metric fields, scalar and tensor fields.

All arrays are stored in lexicographic (C-order) node order and are made
read-only after construction, so instances can be shared across threads.
"""

from __future__ import annotations

import math
from collections.abc import Callable, Sequence
from dataclasses import dataclass, field
from functools import cached_property
from typing import TYPE_CHECKING

import numpy as np
from numpy.typing import NDArray

from acmorse.exceptions import GridMismatchError, InvalidMetricError, TraceFreeError

if TYPE_CHECKING:
    from acmorse.config.models import GridConfig

FloatArray = NDArray[np.float64]

TRACE_FREE_TOL = 1e-12
SYMMETRY_TOL = 1e-12


def _frozen(array: FloatArray) -> FloatArray:
    array.flags.writeable = False
    return array


@dataclass(frozen=True)
class TorusGrid:
    """Periodic uniform grid on the flat torus prod_i [0, L_i)."""

    lengths: tuple[float, ...]
    sizes: tuple[int, ...]

    def __post_init__(self) -> None:
        if not 1 <= len(self.lengths) <= 3:
            raise ValueError(f"torus dimension must be 1, 2 or 3, got {len(self.lengths)}")
        if len(self.sizes) != len(self.lengths):
            raise ValueError("lengths and sizes must have the same number of axes")
        if any(length <= 0 for length in self.lengths):
            raise ValueError(f"lengths must be positive: {self.lengths}")
        if any(size < 4 for size in self.sizes):
            raise ValueError(f"every axis needs at least 4 nodes: {self.sizes}")

    @classmethod
    def from_config(cls, config: GridConfig) -> TorusGrid:
        return cls(tuple(config.lengths), tuple(config.sizes))

    @classmethod
    def circle(cls, length: float = 2 * math.pi, size: int = 256) -> TorusGrid:
        return cls((length,), (size,))

    @property
    def dim(self) -> int:
        return len(self.lengths)

    @property
    def shape(self) -> tuple[int, ...]:
        return self.sizes

    @property
    def node_count(self) -> int:
        return math.prod(self.sizes)

    @property
    def spacings(self) -> tuple[float, ...]:
        return tuple(length / size for length, size in zip(self.lengths, self.sizes))

    @property
    def cell_volume(self) -> float:
        return math.prod(self.spacings)

    def axis_coordinates(self, axis: int) -> FloatArray:
        return np.arange(self.sizes[axis]) * self.spacings[axis]

    def coordinates(self) -> tuple[FloatArray, ...]:
        """Node coordinates per axis, each flattened in node order."""
        mesh = np.meshgrid(
            *(self.axis_coordinates(axis) for axis in range(self.dim)), indexing="ij"
        )
        return tuple(axis_values.ravel() for axis_values in mesh)

    def node_index(self, flat: int) -> tuple[int, ...]:
        return tuple(int(i) for i in np.unravel_index(flat, self.sizes))

    def multi_indices(self) -> NDArray[np.int64]:
        """Array of shape (node_count, dim) listing nodes in lexicographic order."""
        return np.stack(np.unravel_index(np.arange(self.node_count), self.sizes), axis=1)


def _check_same_grid(*grids: TorusGrid) -> None:
    first = grids[0]
    for other in grids[1:]:
        if other != first:
            raise GridMismatchError(f"grid mismatch: {first} vs {other}")


@dataclass(frozen=True, eq=False)
class ScalarField:
    """Real values sampled on the nodes of a grid."""

    grid: TorusGrid
    values: FloatArray

    def __post_init__(self) -> None:
        values = np.array(self.values, dtype=np.float64).ravel()
        if values.size != self.grid.node_count:
            raise GridMismatchError(
                f"field has {values.size} values, grid has {self.grid.node_count} nodes"
            )
        if not np.all(np.isfinite(values)):
            raise ValueError("field values must be finite")
        object.__setattr__(self, "values", _frozen(values))

    @classmethod
    def constant(cls, grid: TorusGrid, value: float) -> ScalarField:
        return cls(grid, np.full(grid.node_count, float(value)))

    @classmethod
    def from_function(
        cls, grid: TorusGrid, fn: Callable[..., FloatArray | float]
    ) -> ScalarField:
        """Sample ``fn(x0, x1, ...)`` at the nodes."""
        sampled = np.broadcast_to(fn(*grid.coordinates()), (grid.node_count,))
        return cls(grid, np.array(sampled, dtype=np.float64))

    @property
    def sup_norm(self) -> float:
        return float(np.max(np.abs(self.values)))

    def with_values(self, values: FloatArray) -> ScalarField:
        return ScalarField(self.grid, values)

    def __neg__(self) -> ScalarField:
        return ScalarField(self.grid, -self.values)

    def __add__(self, other: ScalarField) -> ScalarField:
        _check_same_grid(self.grid, other.grid)
        return ScalarField(self.grid, self.values + other.values)

    def __sub__(self, other: ScalarField) -> ScalarField:
        _check_same_grid(self.grid, other.grid)
        return ScalarField(self.grid, self.values - other.values)

    def __mul__(self, scale: float) -> ScalarField:
        return ScalarField(self.grid, self.values * float(scale))

    __rmul__ = __mul__


def cosine_factor(
    grid: TorusGrid, amplitude: float, wavenumbers: Sequence[int]
) -> FloatArray:
    """Conformal factor 1 + a cos(sum_i 2 pi k_i x_i / L_i) at the nodes."""
    phase = sum(
        2 * math.pi * k * x / length
        for k, x, length in zip(wavenumbers, grid.coordinates(), grid.lengths)
    )
    factor: FloatArray = 1.0 + amplitude * np.cos(phase)
    return factor


@dataclass(frozen=True, eq=False)
class MetricField:
    """Per-node symmetric positive definite metric tensor g(x).

    Derived quantities (inverse, volume density sqrt(det g), quadrature
    weights) are computed once at construction.
    """

    grid: TorusGrid
    tensor: FloatArray
    inverse: FloatArray = field(init=False, repr=False)
    sqrt_det: FloatArray = field(init=False, repr=False)
    weights: FloatArray = field(init=False, repr=False)

    def __post_init__(self) -> None:
        d = self.grid.dim
        tensor = np.array(self.tensor, dtype=np.float64).reshape(
            self.grid.node_count, d, d
        )
        if not np.all(np.isfinite(tensor)):
            raise InvalidMetricError("metric has non-finite entries")
        asym = np.abs(tensor - tensor.transpose(0, 2, 1)).max(axis=(1, 2))
        scale = np.maximum(1.0, np.abs(tensor).max(axis=(1, 2)))
        if np.any(asym > SYMMETRY_TOL * scale):
            node = self.grid.node_index(int(np.argmax(asym / scale)))
            raise InvalidMetricError(f"metric is not symmetric at node {node}", node)
        smallest = np.linalg.eigvalsh(tensor)[:, 0]
        if np.any(smallest <= 0.0):
            node = self.grid.node_index(int(np.argmin(smallest)))
            raise InvalidMetricError(
                f"metric is not positive definite at node {node} "
                f"(smallest eigenvalue {smallest.min():.3e})",
                node,
            )
        sqrt_det = np.sqrt(np.linalg.det(tensor))
        object.__setattr__(self, "tensor", _frozen(tensor))
        object.__setattr__(self, "inverse", _frozen(np.linalg.inv(tensor)))
        object.__setattr__(self, "sqrt_det", _frozen(sqrt_det))
        object.__setattr__(
            self, "weights", _frozen(sqrt_det * self.grid.cell_volume)
        )

    @classmethod
    def euclidean(cls, grid: TorusGrid) -> MetricField:
        return cls(grid, np.broadcast_to(np.eye(grid.dim), (grid.node_count, grid.dim, grid.dim)))

    @classmethod
    def conformal(cls, grid: TorusGrid, factor: FloatArray | float) -> MetricField:
        """Metric c(x) * identity for a positive factor field c."""
        values = np.broadcast_to(np.asarray(factor, dtype=np.float64), (grid.node_count,))
        return cls(grid, values[:, None, None] * np.eye(grid.dim)[None, :, :])

    @classmethod
    def from_tensor(cls, grid: TorusGrid, tensor: FloatArray) -> MetricField:
        return cls(grid, tensor)

    @classmethod
    def with_cosine_perturbation(
        cls, grid: TorusGrid, amplitude: float, wavenumbers: Sequence[int]
    ) -> MetricField:
        return cls.conformal(grid, cosine_factor(grid, amplitude, wavenumbers))

    def conformally_scaled(self, factor: FloatArray | float) -> MetricField:
        values = np.broadcast_to(np.asarray(factor, dtype=np.float64), (self.grid.node_count,))
        return MetricField(self.grid, values[:, None, None] * self.tensor)

    def perturbed(self, perturbation: SymTensorField, t: float) -> MetricField:
        """The metric g + t A."""
        _check_same_grid(self.grid, perturbation.grid)
        return MetricField(self.grid, self.tensor + t * perturbation.tensor)

    @cached_property
    def volume(self) -> float:
        return float(self.weights.sum())

    @cached_property
    def is_euclidean(self) -> bool:
        return bool(np.abs(self.tensor - np.eye(self.grid.dim)).max() <= SYMMETRY_TOL)

    def translation_axes(self, tol: float = 1e-14) -> tuple[int, ...]:
        """Axes along which the metric is invariant under a one-node shift."""
        shaped = self.tensor.reshape(*self.grid.shape, self.grid.dim, self.grid.dim)
        scale = max(1.0, float(np.abs(self.tensor).max()))
        return tuple(
            axis
            for axis in range(self.grid.dim)
            if np.abs(np.roll(shaped, 1, axis=axis) - shaped).max() <= tol * scale
        )


@dataclass(frozen=True, eq=False)
class SymTensorField:
    """Per-node symmetric d x d tensor, used as a first-order metric perturbation."""

    grid: TorusGrid
    tensor: FloatArray
    trace_free: bool = False

    def __post_init__(self) -> None:
        d = self.grid.dim
        tensor = np.array(self.tensor, dtype=np.float64).reshape(
            self.grid.node_count, d, d
        )
        if np.abs(tensor - tensor.transpose(0, 2, 1)).max(initial=0.0) > SYMMETRY_TOL * max(
            1.0, float(np.abs(tensor).max(initial=0.0))
        ):
            raise ValueError("tensor field must be symmetric at every node")
        object.__setattr__(self, "tensor", _frozen(tensor))

    @classmethod
    def zeros(cls, grid: TorusGrid) -> SymTensorField:
        return cls(grid, np.zeros((grid.node_count, grid.dim, grid.dim)), trace_free=True)

    @classmethod
    def diagonal(cls, grid: TorusGrid, diagonal: Sequence[FloatArray | float]) -> SymTensorField:
        """Diagonal tensor from per-axis entries (arrays or constants)."""
        tensor = np.zeros((grid.node_count, grid.dim, grid.dim))
        for axis, entry in enumerate(diagonal):
            tensor[:, axis, axis] = entry
        return cls(grid, tensor)

    def metric_trace(self, metric: MetricField) -> FloatArray:
        """Pointwise Tr_g A = g^{ij} A_ij."""
        _check_same_grid(self.grid, metric.grid)
        trace: FloatArray = np.einsum("nij,nji->n", metric.inverse, self.tensor)
        return trace

    def check_trace_free(self, metric: MetricField, tol: float = TRACE_FREE_TOL) -> None:
        trace = np.abs(self.metric_trace(metric))
        if trace.max(initial=0.0) > tol:
            node = self.grid.node_index(int(np.argmax(trace)))
            raise TraceFreeError(
                f"perturbation is not trace-free: |Tr_g A| = {trace.max():.3e} at node {node}"
            )

    def trace_free_part(self, metric: MetricField) -> SymTensorField:
        """A - (Tr_g A / d) g, the component orthogonal to conformal changes."""
        trace = self.metric_trace(metric)
        tensor = self.tensor - (trace / self.grid.dim)[:, None, None] * metric.tensor
        return SymTensorField(self.grid, tensor, trace_free=True)

    def conformal_part(self, metric: MetricField) -> SymTensorField:
        trace = self.metric_trace(metric)
        return SymTensorField(
            self.grid, (trace / self.grid.dim)[:, None, None] * metric.tensor
        )
