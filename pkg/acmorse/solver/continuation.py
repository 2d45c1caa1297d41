"""Pseudo-arclength continuation of solution branches in epsilon.

The augmented state is z = (u, eps, lam) where lam are Lagrange multipliers
for phase conditions <d_i u_ref, u - u_ref>_W = 0, one per translation axis
of the metric, added only on nonconstant branches. The corrector solves the
bordered system

    [ S_H     A u   W G ] [du  ]     [ eps A u + W f(u) + W G lam ]
    [ t_u^T   t_eps  0  ] [deps] = - [ arclength constraint       ]
    [ (W G)^T  0     0  ] [dlam]     [ phase conditions           ]

with a secant predictor and adaptive steps.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass

import numpy as np
import scipy.sparse as sp
from scipy.sparse.linalg import splu

from acmorse.config.models import ContinuationConfig, SolverConfig
from acmorse.exceptions import AcMorseError
from acmorse.grid import FloatArray, central_differences
from acmorse.observability.logging import EVENT_LOG, TRACE
from acmorse.observability.tracing import trace_action
from acmorse.operator import Problem
from acmorse.spectrum.morse import hessian_inertia

from .models import Branch, BranchEvent, EventKind, SolutionPoint
from .newton import accept_solution, newton_iterate

logger = logging.getLogger(__name__)

CHORD_SLACK = 1.25
SHARP_TOL_FACTOR = 1e-13


@dataclass(frozen=True)
class _State:
    u: FloatArray
    epsilon: float


class _Tracer:
    """Numerical machinery for one branch; not shared between threads."""

    def __init__(
        self,
        prob: Problem,
        start: SolutionPoint,
        step_ctrl: ContinuationConfig,
        solver: SolverConfig,
        zero_tol_factor: float,
    ) -> None:
        self.prob = prob
        self.step_ctrl = step_ctrl
        self.solver = solver
        self.zero_tol_factor = zero_tol_factor
        self.scaled_weights = prob.weights / prob.weights.sum()
        self.differences = (
            [] if start.is_constant else [
                central_differences(prob.grid)[axis]
                for axis in prob.metric.translation_axes()
            ]
        )

    def norm(self, du: FloatArray, deps: float) -> float:
        return float(np.sqrt(np.sum(du * du * self.scaled_weights) + deps * deps))

    def generators(self, u: FloatArray) -> FloatArray:
        if not self.differences:
            return np.zeros((u.size, 0))
        return np.stack([d @ u for d in self.differences], axis=1)

    def _bordered(
        self, u: FloatArray, epsilon: float, t_u: FloatArray, t_eps: float, gens: FloatArray
    ) -> sp.csc_matrix:
        prob = self.prob.with_epsilon(epsilon)
        column = sp.csr_matrix((prob.stiffness @ u)[:, None])
        row = sp.csr_matrix((t_u * self.scaled_weights)[None, :])
        corner = sp.csr_matrix([[t_eps]])
        if not gens.shape[1]:
            return sp.bmat([[prob.hessian_stiffness(u), column], [row, corner]], format="csc")
        weighted_gens = sp.csr_matrix(gens * prob.weights[:, None])
        return sp.bmat(
            [
                [prob.hessian_stiffness(u), column, weighted_gens],
                [row, corner, None],
                [weighted_gens.T, None, None],
            ],
            format="csc",
        )

    def tangent(
        self, state: _State, previous: tuple[FloatArray, float]
    ) -> tuple[FloatArray, float]:
        """Unit tangent at ``state`` oriented along ``previous``."""
        t_u, t_eps = previous
        gens = self.generators(state.u)
        matrix = self._bordered(state.u, state.epsilon, t_u, t_eps, gens)
        rhs = np.zeros(matrix.shape[0])
        rhs[state.u.size] = 1.0
        z = splu(matrix).solve(rhs)
        new_u, new_eps = z[: state.u.size], float(z[state.u.size])
        scale = self.norm(new_u, new_eps)
        new_u, new_eps = new_u / scale, new_eps / scale
        if np.sum(new_u * t_u * self.scaled_weights) + new_eps * t_eps < 0:
            new_u, new_eps = -new_u, -new_eps
        return new_u, new_eps

    def correct(
        self,
        predicted: _State,
        reference: _State,
        t_u: FloatArray,
        t_eps: float,
    ) -> tuple[_State, int] | None:
        """Newton on the augmented system; None when the corrector fails."""
        gens = self.generators(reference.u)
        weighted_gens = gens * self.prob.weights[:, None]
        u, epsilon = predicted.u.copy(), predicted.epsilon
        lam = np.zeros(gens.shape[1])
        bound = self.solver.divergence_factor * max(self.prob.potential.t0, 1e-12)
        for iteration in range(1, self.step_ctrl.corrector_iterations + 1):
            if epsilon <= 0:
                return None
            prob = self.prob.with_epsilon(epsilon)
            f1 = prob.weights * prob.residual_values(u) + weighted_gens @ lam
            f2 = float(
                np.sum((u - predicted.u) * t_u * self.scaled_weights)
                + t_eps * (epsilon - predicted.epsilon)
            )
            f3 = weighted_gens.T @ (u - reference.u)
            matrix = self._bordered(u, epsilon, t_u, t_eps, gens)
            try:
                step = splu(matrix).solve(-np.concatenate([f1, [f2], f3]))
            except RuntimeError:
                return None
            if not np.all(np.isfinite(step)):
                return None
            n = u.size
            u = u + step[:n]
            epsilon = epsilon + float(step[n])
            lam = lam + step[n + 1 :]
            if np.abs(u).max() > bound or epsilon <= 0:
                return None
            residual = prob.with_epsilon(epsilon).residual_values(u)
            if prob.norm(residual) <= self.solver.tolerance:
                logger.log(TRACE, "Corrector converged", extra={"iterations": iteration})
                return _State(u, epsilon), iteration
        return None

    def point(self, state: _State, tag: str) -> SolutionPoint:
        prob = self.prob.with_epsilon(state.epsilon)
        outcome = newton_iterate(prob, state.u, self.solver, max_iterations=3)
        return accept_solution(
            prob, outcome, tag, self.solver, zero_tol_factor=self.zero_tol_factor
        )

    def sharp_index(self, u: FloatArray, epsilon: float) -> int:
        prob = self.prob.with_epsilon(epsilon)
        return hessian_inertia(prob, u, zero_tol_factor=SHARP_TOL_FACTOR).index

    def fixed_epsilon_point(
        self, guess: FloatArray, epsilon: float, tag: str
    ) -> SolutionPoint:
        prob = self.prob.with_epsilon(epsilon)
        outcome = newton_iterate(prob, guess, self.solver)
        return accept_solution(
            prob, outcome, tag, self.solver, zero_tol_factor=self.zero_tol_factor
        )


def _locate_index_change(
    tracer: _Tracer,
    before: SolutionPoint,
    after: SolutionPoint,
    event_tol: float,
) -> tuple[float, int, bool]:
    """Bisect in epsilon for the eigenvalue crossing; returns (eps, nullity, refined).

    Bisection compares sharp indices (zero tolerance near roundoff), so the
    located epsilon is not biased by the width of the nullity band.
    """
    lo_eps, lo_u = before.epsilon, before.u.values
    hi_eps, hi_u = after.epsilon, after.u.values
    lo_index = tracer.sharp_index(lo_u, lo_eps)
    while abs(hi_eps - lo_eps) > event_tol:
        mid = 0.5 * (lo_eps + hi_eps)
        weight = (mid - lo_eps) / (hi_eps - lo_eps)
        guess = (1.0 - weight) * lo_u + weight * hi_u
        try:
            point = tracer.fixed_epsilon_point(guess, mid, "bisection")
        except AcMorseError:
            return mid, 0, False
        if tracer.sharp_index(point.u.values, mid) == lo_index:
            lo_eps, lo_u = mid, point.u.values
        else:
            hi_eps, hi_u = mid, point.u.values
    epsilon = 0.5 * (lo_eps + hi_eps)
    prob = tracer.prob.with_epsilon(epsilon)
    inertia = hessian_inertia(
        prob, 0.5 * (lo_u + hi_u), zero_tol_factor=tracer.zero_tol_factor
    )
    return epsilon, inertia.nullity, True


def _fold_vertex(s: list[float], eps: list[float]) -> tuple[float, float]:
    """Vertex of the parabola eps(s) through three points."""
    coeffs = np.polyfit(s, eps, 2)
    if coeffs[0] == 0:
        return s[1], eps[1]
    vertex = float(-coeffs[1] / (2 * coeffs[0]))
    vertex = min(max(vertex, s[0]), s[2])
    return vertex, float(np.polyval(coeffs, vertex))


@trace_action("continue_branch", extract_attrs={"direction": "direction"})
def continue_branch(
    prob: Problem,
    start: SolutionPoint,
    direction: int,
    eps_window: tuple[float, float],
    step_ctrl: ContinuationConfig | None = None,
    *,
    solver: SolverConfig | None = None,
    zero_tol_factor: float = 1e-8,
    branch_id: str = "branch",
) -> Branch:
    """Trace the branch through ``start`` until it leaves ``eps_window``.

    Steps halve on corrector failure and grow after fast convergence; a step
    below ``min_step`` ends the branch with a stall event. Index changes
    between accepted points are located by bisection in epsilon.
    """
    step_ctrl = step_ctrl or ContinuationConfig()
    solver = solver or SolverConfig()
    if direction not in (-1, 1):
        raise ValueError("direction must be -1 or +1")
    lower, upper = eps_window
    if not 0 < lower < upper:
        raise ValueError(f"eps_window must satisfy 0 < lower < upper, got {eps_window}")
    if not lower <= start.epsilon <= upper:
        raise ValueError(f"start epsilon {start.epsilon} outside window {eps_window}")

    tracer = _Tracer(prob, start, step_ctrl, solver, zero_tol_factor)
    branch = Branch(branch_id, [start], [0.0])
    state = _State(start.u.values.copy(), start.epsilon)
    t_u, t_eps = tracer.tangent(
        state, (np.zeros_like(state.u), float(direction))
    )
    step = step_ctrl.initial_step
    arclength = 0.0

    for _ in range(step_ctrl.max_steps):
        predicted = _State(state.u + step * t_u, state.epsilon + step * t_eps)
        corrected = tracer.correct(predicted, state, t_u, t_eps)
        chord = (
            tracer.norm(corrected[0].u - state.u, corrected[0].epsilon - state.epsilon)
            if corrected
            else float("inf")
        )
        if corrected is None or chord > CHORD_SLACK * step:
            step *= 0.5
            if step < step_ctrl.min_step:
                branch.events.append(
                    BranchEvent(
                        kind=EventKind.STALL,
                        arclength=arclength,
                        epsilon=state.epsilon,
                        data={"step": step},
                    )
                )
                logger.warning(
                    "Continuation stalled", extra={"branch": branch_id, "epsilon": state.epsilon}
                )
                break
            continue

        new_state, iterations = corrected
        leaving = not lower <= new_state.epsilon <= upper
        if leaving:
            edge = lower if new_state.epsilon < lower else upper
            weight = (edge - state.epsilon) / (new_state.epsilon - state.epsilon)
            guess = (1.0 - weight) * state.u + weight * new_state.u
            try:
                point = tracer.fixed_epsilon_point(guess, edge, f"{branch_id}:{len(branch)}")
            except AcMorseError:
                break
            new_state = _State(point.u.values, edge)
            chord = tracer.norm(new_state.u - state.u, new_state.epsilon - state.epsilon)
        else:
            try:
                point = tracer.point(new_state, f"{branch_id}:{len(branch)}")
            except AcMorseError as e:
                branch.events.append(
                    BranchEvent(
                        kind=EventKind.STALL,
                        arclength=arclength,
                        epsilon=state.epsilon,
                        data={"reason": str(e)},
                    )
                )
                break

        secant_u = (new_state.u - state.u) / chord
        secant_eps = (new_state.epsilon - state.epsilon) / chord
        previous = branch.points[-1]
        arclength += chord
        branch.points.append(point)
        branch.arclengths.append(arclength)
        _record_events(tracer, branch, previous, point, step_ctrl.event_tol)

        if leaving:
            break
        state = new_state
        t_u, t_eps = secant_u, secant_eps
        if iterations <= step_ctrl.fast_iterations:
            step = min(step * step_ctrl.growth, step_ctrl.max_step)

    logger.info(
        "Branch traced",
        extra={
            "branch": branch_id,
            "points": len(branch),
            "events": len(branch.events),
            "epsilon": branch.points[-1].epsilon,
        },
    )
    return branch


def _record_events(
    tracer: _Tracer,
    branch: Branch,
    previous: SolutionPoint,
    current: SolutionPoint,
    event_tol: float,
) -> None:
    s = branch.arclengths
    eps = branch.epsilons
    fold = False
    if len(eps) >= 3:
        first, second = eps[-2] - eps[-3], eps[-1] - eps[-2]
        if first * second < 0:
            fold = True
            vertex_s, vertex_eps = _fold_vertex(s[-3:], eps[-3:])
            _append(branch, EventKind.FOLD, vertex_s, vertex_eps, {})

    before = tracer.sharp_index(previous.u.values, previous.epsilon)
    after = tracer.sharp_index(current.u.values, current.epsilon)
    if before == after and current.index == previous.index:
        return
    data = {"index_before": previous.index, "index_after": current.index}
    if fold:
        _append(branch, EventKind.INDEX_CHANGE, s[-2], eps[-2], data)
        return
    if before == after:
        _append(branch, EventKind.INDEX_CHANGE, s[-1], eps[-1], data)
        return
    epsilon, nullity, refined = _locate_index_change(tracer, previous, current, event_tol)
    weight = (epsilon - previous.epsilon) / (current.epsilon - previous.epsilon)
    at = s[-2] + weight * (s[-1] - s[-2])
    kind = EventKind.BRANCH_POINT if refined and nullity > 0 else EventKind.INDEX_CHANGE
    _append(branch, kind, at, epsilon, {**data, "nullity": nullity, "refined": refined})


def _append(
    branch: Branch, kind: EventKind, arclength: float, epsilon: float, data: dict[str, object]
) -> None:
    event = BranchEvent(kind=kind, arclength=arclength, epsilon=epsilon, data=data)
    branch.events.append(event)
    logger.log(
        EVENT_LOG,
        "Branch event",
        extra={"branch": branch.branch_id, "kind": str(kind), "epsilon": epsilon},
    )
