"""Conservative finite-difference assembly of the Laplace-Beltrami operator.

The stiffness matrix of a per-node coefficient tensor K is

    S(K) = 2^-d * sum_s G_s^T diag(vol * K) G_s

where s runs over the 2^d choices of forward or backward periodic differences
per axis. S(K) is symmetric whenever K is, and annihilates constants. With
K = sqrt(det g) g^-1 and weights W = sqrt(det g) * prod h_i, the discrete
Laplacian is Delta_g = -W^-1 S(K), self-adjoint in the W-weighted inner
product and negative semidefinite.
"""

from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass
from functools import reduce

import numpy as np
import scipy.sparse as sp

from acmorse.exceptions import GridMismatchError

from .models import FloatArray, MetricField, ScalarField, SymTensorField, TorusGrid

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class WeightedOperator:
    """Sparse operator L = W^-1 S with S symmetric and W = diag(weights) > 0.

    L is self-adjoint in <u, v>_W = sum u v w. Callers that need symmetric
    matrices (factorizations, generalized eigenproblems) use ``stiffness``
    and ``weights`` directly.
    """

    stiffness: sp.csr_matrix
    weights: FloatArray
    grid: TorusGrid

    @property
    def node_count(self) -> int:
        return int(self.weights.size)

    @property
    def shape(self) -> tuple[int, int]:
        return (self.node_count, self.node_count)

    def apply(self, values: FloatArray) -> FloatArray:
        result: FloatArray = (self.stiffness @ values) / self.weights
        return result

    def __matmul__(self, values: FloatArray) -> FloatArray:
        return self.apply(values)

    def matrix(self) -> sp.csr_matrix:
        return sp.csr_matrix(sp.diags(1.0 / self.weights) @ self.stiffness)

    def quadratic_form(self, u: FloatArray, v: FloatArray | None = None) -> float:
        """u^T S v, which equals <u, L v>_W."""
        return float(u @ (self.stiffness @ (u if v is None else v)))

    def symmetric_dense(self) -> FloatArray:
        """Dense W^-1/2 S W^-1/2, similar to L and symmetric."""
        scale = 1.0 / np.sqrt(self.weights)
        dense: FloatArray = self.stiffness.toarray() * scale[:, None] * scale[None, :]
        return 0.5 * (dense + dense.T)

    def row_sum_bound(self) -> float:
        """max_i sum_j |L_ij|, an upper bound on the spectral radius of L."""
        row_sums = np.asarray(abs(self.stiffness).sum(axis=1)).ravel()
        return float(np.max(row_sums / self.weights))

    def scaled(self, factor: float) -> WeightedOperator:
        return WeightedOperator(
            sp.csr_matrix(factor * self.stiffness), self.weights, self.grid
        )

    def plus_multiplication(self, potential: FloatArray) -> WeightedOperator:
        """L + diag(potential)."""
        return WeightedOperator(
            sp.csr_matrix(self.stiffness + sp.diags(self.weights * potential)),
            self.weights,
            self.grid,
        )

    def shifted(self, shift: float) -> WeightedOperator:
        """L + shift * I."""
        return self.plus_multiplication(np.full(self.node_count, float(shift)))


def _periodic_forward_difference(size: int, spacing: float) -> sp.csr_matrix:
    matrix = sp.diags(
        [-np.ones(size), np.ones(size - 1), np.ones(1)],
        [0, 1, -(size - 1)],
        shape=(size, size),
    )
    return sp.csr_matrix(matrix / spacing)


def _along_axis(grid: TorusGrid, axis: int, operator: sp.csr_matrix) -> sp.csr_matrix:
    factors = [
        operator if i == axis else sp.identity(size, format="csr")
        for i, size in enumerate(grid.sizes)
    ]
    return sp.csr_matrix(reduce(lambda a, b: sp.kron(a, b, format="csr"), factors))


def forward_differences(grid: TorusGrid) -> list[sp.csr_matrix]:
    """Periodic forward difference per axis, in node order."""
    return [
        _along_axis(grid, axis, _periodic_forward_difference(size, spacing))
        for axis, (size, spacing) in enumerate(zip(grid.sizes, grid.spacings))
    ]


def central_differences(grid: TorusGrid) -> list[sp.csr_matrix]:
    """Periodic central difference per axis; each matrix is skew-symmetric."""
    return [sp.csr_matrix(0.5 * (d - d.T)) for d in forward_differences(grid)]


def assemble_stiffness(grid: TorusGrid, coefficient: FloatArray) -> sp.csr_matrix:
    """S(K) for a per-node symmetric coefficient array K of shape (n, d, d)."""
    d = grid.dim
    forward = forward_differences(grid)
    backward = [sp.csr_matrix(-D.T) for D in forward]
    scaled = np.asarray(coefficient) * grid.cell_volume
    flux = sp.bmat(
        [[sp.diags(scaled[:, i, j]) for j in range(d)] for i in range(d)],
        format="csr",
    )
    total = sp.csr_matrix((grid.node_count, grid.node_count))
    for choice in itertools.product((False, True), repeat=d):
        gradient = sp.vstack(
            [
                backward[axis] if use_backward else forward[axis]
                for axis, use_backward in enumerate(choice)
            ],
            format="csr",
        )
        total = total + gradient.T @ flux @ gradient
    total = total / 2**d
    return sp.csr_matrix(0.5 * (total + total.T))


def _check_grid(grid: TorusGrid, metric: MetricField) -> None:
    if metric.grid != grid:
        raise GridMismatchError(f"metric lives on {metric.grid}, expected {grid}")


def _values(field: ScalarField | FloatArray, grid: TorusGrid) -> FloatArray:
    if isinstance(field, ScalarField):
        if field.grid != grid:
            raise GridMismatchError(f"field lives on {field.grid}, expected {grid}")
        return field.values
    values = np.asarray(field, dtype=np.float64)
    if values.shape != (grid.node_count,):
        raise GridMismatchError(
            f"expected {grid.node_count} values, got shape {values.shape}"
        )
    return values


def assemble_laplace_beltrami(grid: TorusGrid, metric: MetricField) -> WeightedOperator:
    """Discrete Delta_g in conservative form; negative semidefinite."""
    _check_grid(grid, metric)
    coefficient = metric.sqrt_det[:, None, None] * metric.inverse
    stiffness = assemble_stiffness(grid, coefficient)
    logger.debug(
        "Assembled Laplace-Beltrami operator",
        extra={"nodes": grid.node_count, "nnz": stiffness.nnz},
    )
    return WeightedOperator(sp.csr_matrix(-stiffness), metric.weights, grid)


def weighted_integral(field: ScalarField | FloatArray, metric: MetricField) -> float:
    """sum_x field(x) sqrt(det g(x)) prod h_i."""
    return float(_values(field, metric.grid) @ metric.weights)


def weighted_inner(
    u: ScalarField | FloatArray, v: ScalarField | FloatArray, metric: MetricField
) -> float:
    return float(
        np.sum(_values(u, metric.grid) * _values(v, metric.grid) * metric.weights)
    )


def weighted_norm(u: ScalarField | FloatArray, metric: MetricField) -> float:
    return float(np.sqrt(weighted_inner(u, u, metric)))


def trace_free_part(perturbation: SymTensorField, metric: MetricField) -> SymTensorField:
    return perturbation.trace_free_part(metric)


def conformal_part(perturbation: SymTensorField, metric: MetricField) -> SymTensorField:
    return perturbation.conformal_part(metric)


def perturbation_stiffness(
    perturbation: SymTensorField, metric: MetricField
) -> sp.csr_matrix:
    """S(sqrt(det g) g^-1 A g^-1), the bilinear form of -div(A grad)."""
    if perturbation.grid != metric.grid:
        raise GridMismatchError("perturbation and metric live on different grids")
    perturbation.check_trace_free(metric)
    raised = np.einsum(
        "nij,njk,nkl->nil", metric.inverse, perturbation.tensor, metric.inverse
    )
    return assemble_stiffness(metric.grid, metric.sqrt_det[:, None, None] * raised)


def apply_perturbed_laplacian(
    perturbation: SymTensorField, phi: ScalarField | FloatArray, metric: MetricField
) -> ScalarField:
    """First variation of Delta_g along a trace-free A applied to phi.

    Equals -div(A grad phi), assembled with the same flux stencils as the
    Laplacian so that <phi, result>_W = sum over stencils of
    <A, grad phi (x) grad phi> dVol.
    """
    values = _values(phi, metric.grid)
    stiffness = perturbation_stiffness(perturbation, metric)
    return ScalarField(metric.grid, (stiffness @ values) / metric.weights)


def translation_axes(metric: MetricField) -> tuple[int, ...]:
    return metric.translation_axes()
