"""First-order variation of Laplace-Beltrami eigenvalues under metric changes.

For a trace-free perturbation A of g and a simple eigenvalue of eps Delta_g
with W-normalized eigenfield phi, the eigenvalue moves at rate

    eps * sum <A, grad phi (x) grad phi> dVol = eps * phi^T S_A phi

where S_A is the stiffness of -div(A grad). The central finite difference
of the tracked eigenvalue of eps Delta_{g + tA} serves as the oracle.
"""

from __future__ import annotations

import numpy as np

from acmorse.exceptions import NonSimpleEigenvalueError
from acmorse.grid import (
    FloatArray,
    ScalarField,
    SymTensorField,
    assemble_laplace_beltrami,
    perturbation_stiffness,
)
from acmorse.operator import Problem

from .eigen import laplacian_spectrum
from .models import SpectrumResult

NORMALIZATION_TOL = 1e-8
EIGENFIELD_TOL = 1e-6


def _rayleigh(prob: Problem, phi: FloatArray) -> float:
    return float(phi @ (prob.stiffness @ phi)) / prob.inner(phi, phi)


def _check_simple(
    prob: Problem, phi: FloatArray, cluster_tol: float, spectrum: SpectrumResult | None
) -> None:
    value = _rayleigh(prob, phi)
    defect = prob.norm(prob.stiffness @ phi / prob.weights - value * phi)
    if defect > EIGENFIELD_TOL * max(1.0, value):
        raise ValueError(
            f"phi0 is not an eigenfield of -Delta_g (defect {defect:.3e})"
        )
    if spectrum is None:
        count = min(8, prob.grid.node_count - 1)
        while True:
            spectrum = laplacian_spectrum(
                prob.metric, count, operator=prob.laplacian, cluster_tol=cluster_tol
            )
            if spectrum.next_eigenvalue > value * (1 + 10 * cluster_tol) + cluster_tol:
                break
            if count >= prob.grid.node_count - 1:
                break
            count = min(2 * count, prob.grid.node_count - 1)
    values = [*spectrum.eigenvalues, spectrum.next_eigenvalue]
    close = sum(1 for v in values if abs(v - value) <= cluster_tol * max(1.0, abs(value)))
    if close > 1:
        raise NonSimpleEigenvalueError(
            f"eigenvalue {value:.8g} of -Delta_g has multiplicity {close}"
        )


def eigenvalue_derivative(
    prob: Problem,
    perturbation: SymTensorField,
    phi0: ScalarField | FloatArray,
    *,
    cluster_tol: float = 1e-6,
    spectrum: SpectrumResult | None = None,
) -> float:
    """d/dt of the eigenvalue of eps Delta_{g + tA} carried by phi0, at t = 0.

    phi0 must be a W-normalized eigenfield of a simple eigenvalue and A must
    be trace-free with respect to g.
    """
    phi = prob.values(phi0)
    norm = prob.norm(phi)
    if abs(norm - 1.0) > NORMALIZATION_TOL:
        raise ValueError(f"phi0 must be normalized, got norm {norm:.12g}")
    stiffness = perturbation_stiffness(perturbation, prob.metric)
    _check_simple(prob, phi, cluster_tol, spectrum)
    return prob.epsilon * float(phi @ (stiffness @ phi))


def _tracked_eigenvalue(
    prob: Problem, perturbation: SymTensorField, t: float, reference: FloatArray, count: int
) -> float:
    metric = prob.metric.perturbed(perturbation, t)
    laplacian = assemble_laplace_beltrami(prob.grid, metric)
    spectrum = laplacian_spectrum(metric, count, operator=laplacian)
    overlaps = np.abs(
        (reference * metric.weights) @ spectrum.eigenvectors
    )
    k = int(np.argmax(overlaps))
    # eigenvalue of eps Delta_g is minus eps times that of -Delta_g
    return -prob.epsilon * float(spectrum.eigenvalues[k])


def eigenvalue_derivative_fd(
    prob: Problem,
    perturbation: SymTensorField,
    k: int,
    t: float = 1e-4,
) -> float:
    """Central difference of the k-th eigenvalue of eps Delta_{g + tA}.

    The perturbed eigenvalue is the one whose eigenfield overlaps most with
    the k-th eigenfield of -Delta_g.
    """
    count = min(k + 4, prob.grid.node_count - 1)
    base = laplacian_spectrum(prob.metric, count, operator=prob.laplacian)
    reference = base.eigenvectors[:, k]
    upper = _tracked_eigenvalue(prob, perturbation, t, reference, count)
    lower = _tracked_eigenvalue(prob, perturbation, -t, reference, count)
    return (upper - lower) / (2.0 * t)
