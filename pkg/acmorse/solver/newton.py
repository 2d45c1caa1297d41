"""Damped Newton iteration for R(u) = 0 with optional deflation."""

from __future__ import annotations

import logging
from collections.abc import Sequence
from dataclasses import dataclass

import numpy as np
import scipy.sparse as sp
from scipy.sparse.linalg import splu

from acmorse.config.models import SolverConfig
from acmorse.exceptions import APrioriBoundError, ConvergenceError
from acmorse.grid import FloatArray, ScalarField
from acmorse.observability.logging import TRACE
from acmorse.observability.tracing import trace_action
from acmorse.operator import Problem
from acmorse.spectrum.morse import hessian_inertia

from .models import SolutionPoint

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class Deflation:
    """Multiplicative deflation M(u) = prod_k (||u - u_k||_W^-p + shift)."""

    known: Sequence[FloatArray]
    weights: FloatArray
    power: float = 2.0
    shift: float = 1.0

    def _distances(self, u: FloatArray) -> list[tuple[FloatArray, float]]:
        out = []
        for root in self.known:
            diff = u - root
            out.append((diff, float(np.sqrt(np.sum(diff * diff * self.weights)))))
        return out

    def factor(self, u: FloatArray) -> float:
        return float(
            np.prod([d ** -self.power + self.shift for _, d in self._distances(u)])
        )

    def log_derivative(self, u: FloatArray, direction: FloatArray) -> float:
        """d/dt log M(u + t direction) at t = 0."""
        total = 0.0
        for diff, d in self._distances(u):
            inner = float(np.sum(diff * direction * self.weights))
            total += -self.power * d ** (-self.power - 2) * inner / (d ** -self.power + self.shift)
        return total


@dataclass(frozen=True)
class NewtonOutcome:
    u: FloatArray
    residual_norm: float
    iterations: int
    regularized_steps: int
    converged: bool
    reason: str


def _huge_step(prob: Problem, settings: SolverConfig) -> float:
    return 10.0 * settings.divergence_factor * max(prob.potential.t0, 1.0)


def newton_step(
    prob: Problem,
    u: FloatArray,
    r: FloatArray,
    settings: SolverConfig,
    directions: FloatArray | None = None,
) -> tuple[FloatArray, bool]:
    """Solve S_H delta = -W R; fall back to S_H + mu W when that fails.

    With ``directions`` the step is W-orthogonal to each column, which pins
    the kernel that translations leave along a solution orbit:

        [ S_H      W G ] [delta]   [-W R]
        [ (W G)^T   0  ] [ mu  ] = [  0 ]

    Returns the step and whether the regularized system was used.
    """
    matrix = prob.hessian_stiffness(u).tocsc()
    rhs = -prob.weights * r
    if directions is not None and directions.shape[1]:
        border = sp.csr_matrix(directions * prob.weights[:, None])
        system = sp.bmat([[matrix, border], [border.T, None]], format="csc")
        system_rhs = np.concatenate([rhs, np.zeros(directions.shape[1])])
    else:
        system, system_rhs = matrix, rhs
    try:
        delta = splu(system).solve(system_rhs)[: u.size]
        if np.all(np.isfinite(delta)) and np.abs(delta).max() <= _huge_step(prob, settings):
            return delta, False
    except RuntimeError:
        pass
    mu = settings.regularization * (
        1.0 + prob.epsilon * prob.laplacian_bound + np.abs(prob.potential.fprime(u)).max()
    )
    regularized = sp.csc_matrix(matrix + sp.diags(mu * prob.weights))
    delta = splu(regularized).solve(rhs)
    return delta, True


@dataclass(frozen=True)
class _Trial:
    u: FloatArray
    r: FloatArray
    norm: float
    damping: float
    regularized: bool


def _line_search(
    prob: Problem,
    u: FloatArray,
    r: FloatArray,
    norm: float,
    settings: SolverConfig,
    deflation: Deflation | None,
    directions: FloatArray | None,
) -> _Trial | str:
    """Armijo backtracking along one Newton direction; a reason string on failure."""
    delta, regularized = newton_step(prob, u, r, settings, directions)
    if deflation is not None:
        denominator = 1.0 - deflation.log_derivative(u, delta)
        if denominator == 0.0 or not np.isfinite(denominator):
            return "deflation singular"
        delta = delta / denominator
        merit = norm * deflation.factor(u)
    else:
        merit = norm

    alpha = 1.0
    while alpha >= settings.min_damping:
        trial = u + alpha * delta
        trial_r = prob.residual_values(trial)
        trial_norm = prob.norm(trial_r)
        trial_merit = trial_norm * (deflation.factor(trial) if deflation else 1.0)
        if np.isfinite(trial_merit) and trial_merit <= (1.0 - settings.armijo * alpha) * merit:
            return _Trial(trial, trial_r, trial_norm, alpha, regularized)
        alpha *= settings.backtrack_factor
    return "line search failed"


def newton_iterate(
    prob: Problem,
    u0: FloatArray,
    settings: SolverConfig | None = None,
    *,
    deflation: Deflation | None = None,
    max_iterations: int | None = None,
) -> NewtonOutcome:
    """Damped Newton with Armijo backtracking on ||R||_W.

    With ``deflation`` the step is that of Newton on M(u) R(u) and the line
    search acts on ||M R||_W; convergence is always judged on ||R||_W.
    Once ||R||_W drops below ``pin_threshold`` the step is first tried with
    a phase condition along the translation directions of u, and without it
    when that line search fails.
    """
    settings = settings or SolverConfig()
    budget = max_iterations or settings.max_iterations
    bound = settings.divergence_factor * max(prob.potential.t0, 1e-12)
    u = np.array(u0, dtype=np.float64)
    r = prob.residual_values(u)
    norm = prob.norm(r)
    regularized_steps = 0
    for iteration in range(budget + 1):
        if norm <= settings.tolerance:
            return NewtonOutcome(u, norm, iteration, regularized_steps, True, "converged")
        if iteration == budget:
            break
        candidates: list[FloatArray | None] = [None]
        if settings.pin_translations and norm <= settings.pin_threshold:
            pinned = prob.translation_directions(u)
            if pinned.shape[1]:
                candidates.insert(0, pinned)
        step: _Trial | str = "line search failed"
        for directions in candidates:
            step = _line_search(prob, u, r, norm, settings, deflation, directions)
            if isinstance(step, _Trial):
                break
        if not isinstance(step, _Trial):
            return NewtonOutcome(u, norm, iteration, regularized_steps, False, step)

        u, r, norm = step.u, step.r, step.norm
        regularized_steps += int(step.regularized)
        logger.log(
            TRACE,
            "Newton iteration",
            extra={
                "iteration": iteration + 1,
                "residual": norm,
                "damping": step.damping,
                "pinned": directions is not None,
            },
        )
        if np.abs(u).max() > bound:
            return NewtonOutcome(u, norm, iteration + 1, regularized_steps, False, "diverged")
    return NewtonOutcome(u, norm, budget, regularized_steps, False, "iteration budget exhausted")


def accept_solution(
    prob: Problem,
    outcome: NewtonOutcome,
    tag: str,
    settings: SolverConfig | None = None,
    *,
    zero_tol_factor: float = 1e-8,
) -> SolutionPoint:
    """Turn a converged iterate into a SolutionPoint, checking ||u||_inf <= T0."""
    settings = settings or SolverConfig()
    if not outcome.converged:
        raise ConvergenceError(
            f"Newton failed after {outcome.iterations} iterations: {outcome.reason} "
            f"(residual {outcome.residual_norm:.3e})"
        )
    sup = float(np.abs(outcome.u).max())
    limit = prob.potential.t0 + settings.bound_slack
    if sup > limit:
        raise APrioriBoundError(
            f"converged state has ||u||_inf = {sup:.9g} > T0 + slack = {limit:.9g}"
        )
    inertia = hessian_inertia(prob, outcome.u, zero_tol_factor=zero_tol_factor)
    warnings = list(inertia.warnings)
    if outcome.regularized_steps:
        warnings.append(f"{outcome.regularized_steps} regularized Newton steps")
    return SolutionPoint(
        epsilon=prob.epsilon,
        u=ScalarField(prob.grid, outcome.u),
        residual_norm=outcome.residual_norm,
        index=inertia.index,
        nullity=inertia.nullity,
        energy=prob.energy_value(outcome.u),
        tag=tag,
        iterations=outcome.iterations,
        regularized_steps=outcome.regularized_steps,
        warnings=tuple(warnings),
    )


@trace_action("newton_solve", extract_attrs={"tag": "tag"})
def newton_solve(
    prob: Problem,
    u0: ScalarField | FloatArray,
    settings: SolverConfig | None = None,
    *,
    tag: str = "newton",
    zero_tol_factor: float = 1e-8,
) -> SolutionPoint:
    """Solve R(u) = 0 from u0.

    Raises ConvergenceError on divergence or an exhausted budget, and
    APrioriBoundError if the limit leaves the box ||u||_inf <= T0.
    """
    start = prob.values(u0)
    if not np.all(np.isfinite(start)):
        raise ValueError("initial guess must be finite")
    outcome = newton_iterate(prob, start, settings)
    if outcome.regularized_steps:
        logger.warning(
            "Newton used regularized steps",
            extra={"count": outcome.regularized_steps, "tag": tag},
        )
    return accept_solution(prob, outcome, tag, settings, zero_tol_factor=zero_tol_factor)
