"""Smallest eigenpairs of W-self-adjoint sparse operators.

The generalized symmetric problem S v = lam W v is solved densely with
LAPACK below a size threshold and with ARPACK's implicitly restarted
Lanczos iteration in shift-invert mode above it.
"""

from __future__ import annotations

import logging
from collections.abc import Sequence

import numpy as np
import scipy.linalg as la
import scipy.sparse as sp
from scipy.sparse.linalg import ArpackNoConvergence, eigsh

from acmorse.exceptions import EigenSolveError
from acmorse.grid import (
    FloatArray,
    MetricField,
    WeightedOperator,
    assemble_laplace_beltrami,
)
from acmorse.observability.tracing import trace_action

from .models import SpectrumResult

logger = logging.getLogger(__name__)

DENSE_THRESHOLD = 2000
RESIDUAL_TOL = 1e-8


def gershgorin_lower_bound(op: WeightedOperator) -> float:
    """A lower bound on the spectrum of W^-1 S."""
    stiffness = sp.csr_matrix(op.stiffness)
    diagonal = stiffness.diagonal()
    off = np.asarray(abs(stiffness).sum(axis=1)).ravel() - np.abs(diagonal)
    return float(np.min((diagonal - off) / op.weights))


def _dense(op: WeightedOperator, count: int) -> tuple[FloatArray, FloatArray]:
    stiffness = op.stiffness.toarray()
    stiffness = 0.5 * (stiffness + stiffness.T)
    values, vectors = la.eigh(
        stiffness, np.diag(op.weights), subset_by_index=[0, count - 1]
    )
    return values, vectors


def _iterative(
    op: WeightedOperator, count: int, max_iterations: int
) -> tuple[FloatArray, FloatArray]:
    lower = gershgorin_lower_bound(op)
    sigma = lower - 1e-3 * (1.0 + abs(lower))
    mass = sp.diags(op.weights).tocsc()
    try:
        values, vectors = eigsh(
            sp.csc_matrix(op.stiffness),
            k=count,
            M=mass,
            sigma=sigma,
            which="LM",
            maxiter=max_iterations,
            tol=0.0,
        )
    except ArpackNoConvergence as e:
        raise EigenSolveError(
            f"Lanczos iteration did not converge: {len(e.eigenvalues)} of {count} "
            f"eigenpairs after {max_iterations} iterations"
        ) from e
    order = np.argsort(values)
    return values[order], vectors[:, order]


def _normalize(vectors: FloatArray, weights: FloatArray) -> FloatArray:
    norms = np.sqrt(np.sum(vectors * vectors * weights[:, None], axis=0))
    normalized: FloatArray = vectors / norms
    # fix the sign so repeated runs give identical eigenfields
    pivots = np.argmax(np.abs(normalized) > 1e-8 * np.abs(normalized).max(axis=0), axis=0)
    signs = np.sign(normalized[pivots, np.arange(normalized.shape[1])])
    return normalized * np.where(signs == 0, 1.0, signs)


@trace_action("eigen_solve", extract_attrs={"count": "count"})
def eigen_solve(
    op: WeightedOperator,
    count: int,
    *,
    cluster_tol: float = 1e-6,
    dense_threshold: int = DENSE_THRESHOLD,
    max_iterations: int = 10000,
) -> SpectrumResult:
    """The ``count`` algebraically smallest eigenpairs of ``op``.

    Raises EigenSolveError when the iterative solver does not converge or a
    returned pair fails its residual check.
    """
    n = op.node_count
    if not 1 <= count <= n:
        raise ValueError(f"count must be in [1, {n}], got {count}")
    wanted = min(count + 1, n)
    if n <= dense_threshold:
        method = "dense"
        values, vectors = _dense(op, wanted)
    else:
        method = "iterative"
        values, vectors = _iterative(op, min(wanted, n - 1), max_iterations)
    vectors = _normalize(vectors, op.weights)

    applied = op.stiffness @ vectors / op.weights[:, None] - vectors * values[None, :]
    residuals = np.sqrt(np.sum(applied * applied * op.weights[:, None], axis=0))
    scale = np.maximum(1.0, np.abs(values))
    if np.any(residuals > 1e2 * RESIDUAL_TOL * scale):
        worst = int(np.argmax(residuals / scale))
        raise EigenSolveError(
            f"eigenpair {worst} has residual {residuals[worst]:.3e} "
            f"(eigenvalue {values[worst]:.6g})"
        )

    next_eigenvalue = float(values[count]) if values.size > count else float("inf")
    logger.debug(
        "Eigen solve finished",
        extra={"method": method, "count": count, "smallest": float(values[0])},
    )
    return SpectrumResult(
        grid=op.grid,
        eigenvalues=values[:count],
        eigenvectors=vectors[:, :count],
        weights=op.weights,
        cluster_tol=cluster_tol,
        next_eigenvalue=next_eigenvalue,
        method=method,
        residuals=residuals[:count],
    )


def laplacian_spectrum(
    metric: MetricField,
    count: int,
    *,
    operator: WeightedOperator | None = None,
    cluster_tol: float = 1e-6,
    dense_threshold: int = DENSE_THRESHOLD,
    max_iterations: int = 10000,
) -> SpectrumResult:
    """Smallest eigenpairs of -Delta_g (non-negative, lam_0 = 0)."""
    laplacian = operator or assemble_laplace_beltrami(metric.grid, metric)
    return eigen_solve(
        laplacian.scaled(-1.0),
        count,
        cluster_tol=cluster_tol,
        dense_threshold=dense_threshold,
        max_iterations=max_iterations,
    )


def laplacian_spectrum_reaching(
    metric: MetricField,
    threshold: float,
    *,
    operator: WeightedOperator | None = None,
    cluster_tol: float = 1e-6,
    initial_count: int = 16,
) -> SpectrumResult:
    """Eigenpairs of -Delta_g, enough of them that the next one exceeds ``threshold``."""
    laplacian = operator or assemble_laplace_beltrami(metric.grid, metric)
    limit = metric.grid.node_count - 1
    count = min(initial_count, limit)
    while True:
        spectrum = laplacian_spectrum(
            metric, count, operator=laplacian, cluster_tol=cluster_tol
        )
        if spectrum.next_eigenvalue > threshold or count >= limit:
            return spectrum
        count = min(2 * count, limit)


def flat_torus_eigenvalues(lengths: Sequence[float], count: int) -> FloatArray:
    """The ``count`` smallest eigenvalues of -Delta on the flat torus, with multiplicity.

    Eigenfunctions are exp(2 pi i k.x / L) with eigenvalue sum_i (2 pi k_i / L_i)^2.
    """
    if count < 1:
        raise ValueError(f"count must be positive, got {count}")
    reach = (count + 1) // 2 + 1
    axes = [np.arange(-reach, reach + 1)] * len(lengths)
    wavevectors = np.array(np.meshgrid(*axes, indexing="ij")).reshape(len(lengths), -1)
    scaled = 2 * np.pi * wavevectors / np.asarray(lengths, dtype=np.float64)[:, None]
    values: FloatArray = np.sort(np.sum(scaled * scaled, axis=0))[:count]
    return values
