"""Morse index and nullity by inertia, and the constant-solution formulas."""

from __future__ import annotations

import logging

import numpy as np
import scipy.linalg as la

from acmorse.exceptions import SpectrumTruncatedError
from acmorse.grid import FloatArray, WeightedOperator
from acmorse.observability.tracing import trace_action
from acmorse.operator import Problem
from acmorse.potential import Potential

from .eigen import DENSE_THRESHOLD, eigen_solve
from .models import Inertia, SingularParameter, SpectrumResult

logger = logging.getLogger(__name__)

BAND_TOL = 1e-4


class _Breakdown(Exception):
    pass


def _negative_count(matrix: FloatArray) -> int:
    """Number of negative eigenvalues of a symmetric matrix via Bunch-Kaufman LDL^T."""
    _, d, _ = la.ldl(matrix, lower=True, hermitian=True)
    n = d.shape[0]
    negatives = 0
    i = 0
    while i < n:
        if i + 1 < n and d[i + 1, i] != 0.0:
            block = np.linalg.eigvalsh(d[i : i + 2, i : i + 2])
            if np.any(block == 0.0):
                raise _Breakdown(f"singular 2x2 pivot at {i}")
            negatives += int(np.sum(block < 0.0))
            i += 2
        else:
            if d[i, i] == 0.0 or not np.isfinite(d[i, i]):
                raise _Breakdown(f"zero pivot at {i}")
            negatives += int(d[i, i] < 0.0)
            i += 1
    return negatives


def _inertia_by_factorization(op: WeightedOperator, zero_tol: float) -> tuple[int, int]:
    stiffness = op.stiffness.toarray()
    stiffness = 0.5 * (stiffness + stiffness.T)
    mass = np.diag(op.weights * zero_tol)
    below = _negative_count(stiffness + mass)
    at_or_below = _negative_count(stiffness - mass)
    return below, at_or_below - below


def _inertia_by_eigensolve(op: WeightedOperator, zero_tol: float) -> tuple[int, int]:
    count = min(16, op.node_count - 1)
    while True:
        spectrum = eigen_solve(op, count)
        if spectrum.next_eigenvalue > zero_tol or count >= op.node_count - 1:
            values = spectrum.eigenvalues
            return int(np.sum(values < -zero_tol)), int(np.sum(np.abs(values) <= zero_tol))
        count = min(2 * count, op.node_count - 1)


@trace_action("morse_index")
def morse_index(
    op: WeightedOperator, zero_tol: float, *, dense_threshold: int = DENSE_THRESHOLD
) -> Inertia:
    """Index #{lam < -zero_tol} and nullity #{|lam| <= zero_tol} of W^-1 S.

    Uses Sylvester's law on S +- zero_tol W. Large operators, or a breakdown
    of the factorization, go through the eigensolver instead and the
    fallback is recorded in ``warnings``.
    """
    if zero_tol <= 0:
        raise ValueError("zero_tol must be positive")
    warnings: list[str] = []
    if op.node_count <= dense_threshold:
        try:
            index, nullity = _inertia_by_factorization(op, zero_tol)
            return Inertia(index=index, nullity=nullity, zero_tol=zero_tol, method="ldl")
        except (_Breakdown, la.LinAlgError, ValueError) as e:
            message = f"LDL inertia failed ({e}); using eigensolve"
            logger.warning(message)
            warnings.append(message)
    else:
        warnings.append(
            f"{op.node_count} unknowns exceed the factorization threshold; using eigensolve"
        )
    index, nullity = _inertia_by_eigensolve(op, zero_tol)
    return Inertia(
        index=index,
        nullity=nullity,
        zero_tol=zero_tol,
        method="eigensolve",
        warnings=warnings,
    )


def hessian_inertia(
    prob: Problem,
    u: FloatArray,
    *,
    zero_tol_factor: float = 1e-8,
    dense_threshold: int = DENSE_THRESHOLD,
) -> Inertia:
    """morse_index of H(u) with the problem's shared zero tolerance."""
    return morse_index(
        prob.hessian(u),
        prob.zero_tolerance(u, zero_tol_factor),
        dense_threshold=dense_threshold,
    )


def constant_index(
    prob: Problem,
    c: float,
    spectrum: SpectrumResult,
    *,
    zero_tol_factor: float = 1e-8,
) -> Inertia:
    """Index and nullity of the constant solution u = c from Spec(-Delta_g) alone.

    H(c) has eigenvalues eps * lam + f'(c), so the counts use the same zero
    tolerance as ``hessian_inertia`` at the constant field and agree with it.
    """
    zero = prob.potential.zero_at(c)
    constant = np.full(prob.grid.node_count, zero.value)
    zero_tol = prob.zero_tolerance(constant, zero_tol_factor)
    shifted = prob.epsilon * spectrum.eigenvalues + zero.slope
    if prob.epsilon * spectrum.next_eigenvalue + zero.slope <= zero_tol:
        raise SpectrumTruncatedError(
            f"{len(spectrum)} eigenvalues do not reach -f'(c)/eps = "
            f"{-zero.slope / prob.epsilon:.6g}; compute more"
        )
    return Inertia(
        index=int(np.sum(shifted < -zero_tol)),
        nullity=int(np.sum(np.abs(shifted) <= zero_tol)),
        zero_tol=zero_tol,
        method="spectrum",
    )


def singular_epsilons(
    spectrum: SpectrumResult,
    potential: Potential,
    eps_range: tuple[float, float],
) -> list[SingularParameter]:
    """Parameters eps = -f'(c)/lam in the open range, for zeros with f'(c) < 0."""
    lower, upper = eps_range
    if not 0 < lower < upper:
        raise ValueError(f"eps_range must satisfy 0 < lower < upper, got {eps_range}")
    found: list[SingularParameter] = []
    for zero in potential.unstable_zeros:
        reach = -zero.slope / spectrum.next_eigenvalue
        if np.isfinite(spectrum.next_eigenvalue) and reach > lower:
            raise SpectrumTruncatedError(
                f"singular parameters below {reach:.6g} "
                f"need more than {len(spectrum)} eigenvalues"
            )
        for value, multiplicity in spectrum.clusters():
            if value <= spectrum.cluster_tol:
                continue
            epsilon = -zero.slope / value
            if lower < epsilon < upper:
                found.append(
                    SingularParameter(
                        epsilon=epsilon,
                        zero=zero.value,
                        eigenvalue=value,
                        multiplicity=multiplicity,
                    )
                )
    found.sort(key=lambda s: (s.epsilon, s.zero))
    deduplicated: list[SingularParameter] = []
    for item in found:
        previous = deduplicated[-1].epsilon if deduplicated else None
        if previous is not None and abs(item.epsilon - previous) <= 1e-12 * item.epsilon:
            continue
        deduplicated.append(item)
    return deduplicated


def singular_band_distance(epsilon: float, singular: list[SingularParameter]) -> float:
    """Relative distance min |eps - eps_s| / eps_s to the singular set."""
    if not singular:
        return float("inf")
    return min(abs(epsilon - s.epsilon) / s.epsilon for s in singular)


def within_singular_band(
    epsilon: float, singular: list[SingularParameter], band_tol: float = BAND_TOL
) -> bool:
    return singular_band_distance(epsilon, singular) < band_tol


def index_of_zero(
    prob: Problem, spectrum: SpectrumResult, *, zero_tol_factor: float = 1e-8
) -> int:
    """Index(0) of the trivial solution, the count l in the bifurcation theorem."""
    return constant_index(prob, 0.0, spectrum, zero_tol_factor=zero_tol_factor).index

